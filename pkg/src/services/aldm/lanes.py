"""Поиск до трёх полос по общему пулу точек."""

import numpy as np
from loguru import logger

from src.schemas.lane import LineRole, Side
from src.services.aldm.tracer import pool_points, select_seeds, trace_line
from src.services.aldm.types import AldmParams, LaneSet, TracedLine
from src.services.errors import LaneDetectionError, SeedFailureError
from src.services.line_sensor import SensorCloud


def detect_lanes(cloud: SensorCloud, params: AldmParams | None = None) -> LaneSet:
    """Найти направляющие линии текущей полосы и соседних полос.

    Сначала прослеживаются левая и правая границы текущей полосы, затем
    соседние полосы со стартовыми точками не ближе adjacent_min_lateral
    к уже найденным линиям. Принятая точка принадлежит только одной линии.

    Args:
        cloud: Кадр датчика.
        params: Параметры ALDM.

    Returns:
        Найденные линии; отсутствующие соседние полосы равны None.

    Raises:
        LaneDetectionError: Если не найдена граница текущей полосы.

    """
    params = params or AldmParams()
    pool = pool_points(cloud)
    consumed = np.zeros(len(pool), dtype=np.bool_)
    fov_end = cloud.config.fov_end

    def trace(side: Side, role: LineRole, exclusion: tuple[TracedLine, ...] = ()) -> TracedLine:
        seeds = select_seeds(pool, side, exclusion, params, consumed)
        line = trace_line(pool, seeds, params, consumed, fov_end, role)
        consumed[list(line.pool_indices)] = True
        return line

    try:
        ego_left = trace(Side.LEFT, LineRole.EGO_LEFT)
        ego_right = trace(Side.RIGHT, LineRole.EGO_RIGHT)
    except SeedFailureError as e:
        raise LaneDetectionError(f"ego lane not found: {e}") from e

    ego_pair = (ego_left, ego_right)
    adjacent: dict[LineRole, TracedLine | None] = {}
    for side, role in ((Side.LEFT, LineRole.ADJACENT_LEFT), (Side.RIGHT, LineRole.ADJACENT_RIGHT)):
        try:
            adjacent[role] = trace(side, role, ego_pair)
        except SeedFailureError as e:
            logger.debug(f"Соседняя полоса не найдена: {e}")
            adjacent[role] = None

    return LaneSet(
        ego_left=ego_left,
        ego_right=ego_right,
        adjacent_left=adjacent[LineRole.ADJACENT_LEFT],
        adjacent_right=adjacent[LineRole.ADJACENT_RIGHT],
    )

