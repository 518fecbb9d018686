"""Пул точек, выбор стартовых точек, трассировка линии и прореживание."""

import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.constants.settings import GRID_TOLERANCE_M, RESIDUAL_TIE_TOLERANCE_M
from src.schemas.lane import LineRole, Side
from src.services.aldm.fit import fit_linear, fit_quadratic
from src.services.aldm.types import AldmParams, PointPool, QuadCoeffs, Seeds, TracedLine
from src.services.errors import DegenerateInputError, SeedFailureError
from src.services.line_sensor import SensorCloud
from src.services.road_model import PointXY

BoolArray = npt.NDArray[np.bool_]


def pool_points(cloud: SensorCloud) -> PointPool:
    """Собрать точки всех объектов в один пул, забыв про стороны.

    Порядок пула зависит только от координат и id объектов,
    поэтому перестановка левых и правых списков его не меняет.
    """
    objects = cloud.objects
    if not objects:
        empty_f = np.empty(0, dtype=np.float64)
        empty_i = np.empty(0, dtype=np.int64)
        return PointPool(empty_f, empty_f, empty_f, empty_i, empty_i, empty_i, empty_i)

    sizes = [len(obj.points) for obj in objects]
    x = np.concatenate([obj.xs for obj in objects])
    y = np.concatenate([obj.ys for obj in objects])
    z = np.array([p.z for obj in objects for p in obj.points], dtype=np.float64)
    line_id = np.repeat([obj.id for obj in objects], sizes).astype(np.int64)
    truth_label = np.repeat([obj.truth_label for obj in objects], sizes).astype(np.int64)
    marking_type = np.repeat([int(obj.marking_type) for obj in objects], sizes).astype(np.int64)
    point_index = np.concatenate([np.arange(size, dtype=np.int64) for size in sizes])

    order = np.lexsort((line_id, y, x))
    columns = [a[order] for a in (x, y, z, line_id, truth_label, marking_type, point_index)]
    for array in columns:
        array.setflags(write=False)
    return PointPool(*columns)


def _free_mask(pool: PointPool, consumed: BoolArray | None) -> BoolArray:
    if consumed is None:
        return np.ones(len(pool), dtype=np.bool_)
    return ~consumed


def select_seeds(
    pool: PointPool,
    side_hint: Side,
    exclusion: Sequence[TracedLine] = (),
    params: AldmParams | None = None,
    consumed: BoolArray | None = None,
) -> Seeds:
    """Три точки с наименьшим |y| на заданной стороне.

    Точки должны лежать не дальше seed_max_x и отстоять друг от друга
    по x не меньше чем на seed_min_separation. Для соседних полос точки
    дополнительно держатся на adjacent_min_lateral от уже найденных линий.

    Args:
        pool: Пул точек кадра.
        side_hint: Сторона, на которой ищутся точки (по знаку y).
        exclusion: Уже найденные линии, от которых нужно отступить.
        params: Параметры ALDM.
        consumed: Маска уже занятых точек.

    Returns:
        Стартовые точки по возрастанию x.

    Raises:
        SeedFailureError: Если подходящих точек меньше трёх.

    """
    params = params or AldmParams()
    mask = _free_mask(pool, consumed)
    mask &= pool.y > 0 if side_hint is Side.LEFT else pool.y < 0
    mask &= pool.x <= params.seed_max_x + GRID_TOLERANCE_M
    for line in exclusion:
        reference = np.interp(pool.x, line.xs, line.ys)
        mask &= np.abs(pool.y - reference) >= params.adjacent_min_lateral

    candidates = np.flatnonzero(mask)
    # |y| rounded to the tie tolerance, so equal offsets fall back to x order
    lateral = np.round(np.abs(pool.y[candidates]), 9)
    order = candidates[np.lexsort((pool.x[candidates], lateral))]

    chosen: list[int] = []
    for index in order:
        x = pool.x[index]
        if all(
            abs(x - pool.x[other]) >= params.seed_min_separation - GRID_TOLERANCE_M
            for other in chosen
        ):
            chosen.append(int(index))
            if len(chosen) == 3:
                break

    if len(chosen) < 3:
        raise SeedFailureError(
            f"{side_hint} side: {len(chosen)} seed points within x <= {params.seed_max_x}"
        )
    chosen.sort(key=lambda i: pool.x[i])
    first, second, third = chosen
    return Seeds(
        indices=(first, second, third),
        points=(pool.point(first), pool.point(second), pool.point(third)),
    )


def _predictor(pool: PointPool, last_three: Sequence[int]) -> tuple[QuadCoeffs, float]:
    """Парабола через последние три точки в x, сдвинутом к первой из них."""
    x_ref = float(pool.x[last_three[0]])
    shifted = [PointXY(float(pool.x[i]) - x_ref, float(pool.y[i])) for i in last_three]
    try:
        return fit_quadratic(*shifted), x_ref
    except DegenerateInputError:
        logger.debug("Вырожденная тройка точек, продолжаю по прямой")
        return fit_linear(shifted[-2], shifted[-1]), x_ref


def _pick(
    pool: PointPool, candidates: npt.NDArray[np.intp], residuals: npt.NDArray[np.float64]
) -> int:
    """Наименьшая невязка; при равенстве меньший x, затем меньший |y|."""
    ties = candidates[residuals <= residuals.min() + RESIDUAL_TIE_TOLERANCE_M]
    if ties.size == 1:
        return int(ties[0])
    tie_x = pool.x[ties]
    nearest = ties[tie_x <= tie_x.min() + RESIDUAL_TIE_TOLERANCE_M]
    return int(nearest[np.argmin(np.abs(pool.y[nearest]))])


def trace_line(
    pool: PointPool,
    seeds: Seeds,
    params: AldmParams | None = None,
    consumed: BoolArray | None = None,
    fov_end: float = math.inf,
    role: LineRole = LineRole.EGO_LEFT,
) -> TracedLine:
    """Проследить линию от стартовых точек.

    На каждом шаге парабола строится по трём последним принятым точкам;
    из свободных точек с x в (x_last, x_last + max_gap] принимается та,
    что ближе всего к параболе по y. Трассировка кончается, когда окно пусто.

    Args:
        pool: Пул точек кадра.
        seeds: Стартовые точки.
        params: Параметры ALDM.
        consumed: Маска занятых точек (не изменяется).
        fov_end: Дальняя граница обзора по x.
        role: Роль линии.

    Returns:
        Прослеженная линия; если она короче min_preview, к ней приложено предупреждение.

    """
    params = params or AldmParams()
    taken = np.zeros(len(pool), dtype=np.bool_) if consumed is None else consumed.copy()
    accepted = list(seeds.indices)
    taken[accepted] = True

    while True:
        coeffs, x_ref = _predictor(pool, accepted[-3:])
        x_last = float(pool.x[accepted[-1]])
        x_limit = min(x_last + params.max_gap, fov_end) + GRID_TOLERANCE_M
        lo = int(np.searchsorted(pool.x, x_last, side="right"))
        hi = int(np.searchsorted(pool.x, x_limit, side="right"))
        window = np.arange(lo, hi)
        window = window[~taken[lo:hi]]
        if window.size == 0:
            break
        residuals = np.abs(pool.y[window] - coeffs(pool.x[window] - x_ref))
        best = _pick(pool, window, residuals)
        accepted.append(best)
        taken[best] = True

    line = TracedLine(
        role=role,
        points=tuple(pool.point(i) for i in accepted),
        provenance=tuple(pool.provenance(i) for i in accepted),
        pool_indices=tuple(accepted),
    )
    if line.preview < params.min_preview:
        message = f"{role}: preview {line.preview:.1f} m < {params.min_preview:.1f} m"
        logger.warning(f"Короткая линия: {message}")
        line = TracedLine(
            role=line.role,
            points=line.points,
            provenance=line.provenance,
            pool_indices=line.pool_indices,
            warnings=(message,),
        )
    return line


def downsample_indices(length: int, n: int) -> list[int]:
    """Индексы round(i·(len−1)/(n−1)) с округлением половины вверх.

    Raises:
        ValueError: Если n < 1.

    """
    if n < 1:
        raise ValueError(f"downsample needs n >= 1, got {n}")
    if length <= n:
        return list(range(length))
    if n == 1:
        return [0]
    return [math.floor(i * (length - 1) / (n - 1) + 0.5) for i in range(n)]


def downsample(line: TracedLine, n: int) -> TracedLine:
    """Оставить n равномерно распределённых точек, включая крайние."""
    if len(line.points) < 2:
        return line
    keep = downsample_indices(len(line.points), n)
    pool_indices = tuple(line.pool_indices[i] for i in keep) if line.pool_indices else ()
    return TracedLine(
        role=line.role,
        points=tuple(line.points[i] for i in keep),
        provenance=tuple(line.provenance[i] for i in keep),
        pool_indices=pool_indices,
        warnings=line.warnings,
    )
