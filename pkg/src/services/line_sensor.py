"""Модель датчика линий: расширенный список точек для всех видимых объектов разметки.

Каждая полилиния разметки (каждый штрих) становится отдельным объектом линии,
точки берутся на сетке x = near_offset + k·dx в системе датчика.
Сторона объекта определяется только по его первой точке.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.constants.settings import (
    DEFAULT_DX_M,
    DEFAULT_LATERAL_WINDOW_M,
    DEFAULT_LD_RANGE_M,
    DEFAULT_MAX_LINES,
    DEFAULT_MAX_POINTS_PER_LINE,
    DEFAULT_NEAR_OFFSET_M,
    DEFAULT_NOISE_SEED,
    DEFAULT_NOISE_SIGMA_M,
    JOINT_TOLERANCE_M,
)
from src.schemas.lane import MarkingType, Side
from src.services.errors import RoadSpecError
from src.services.road_model import EgoPose, PointXY, RoadGeometry, sample_marking

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class SensorConfig:
    """Параметры датчика линий."""

    ld_range: float = DEFAULT_LD_RANGE_M
    dx: float = DEFAULT_DX_M
    near_offset: float = DEFAULT_NEAR_OFFSET_M
    max_lines: int = DEFAULT_MAX_LINES
    max_points_per_line: int = DEFAULT_MAX_POINTS_PER_LINE
    lateral_window: float = DEFAULT_LATERAL_WINDOW_M
    noise_sigma: float = DEFAULT_NOISE_SIGMA_M
    noise_seed: int = DEFAULT_NOISE_SEED
    merge_fragments: bool = False

    def validate(self) -> None:
        """Проверить инварианты конфигурации.

        Raises:
            ValueError: Если параметр вне допустимого диапазона.

        """
        if self.ld_range <= 0 or self.dx <= 0:
            raise ValueError("ld_range and dx must be > 0")
        if self.near_offset < 0:
            raise ValueError("near_offset must be >= 0")
        if self.max_lines < 1 or self.max_points_per_line < 1:
            raise ValueError("max_lines and max_points_per_line must be >= 1")
        if self.lateral_window <= 0:
            raise ValueError("lateral_window must be > 0")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")

    @property
    def grid_size(self) -> int:
        """Число узлов сетки на линию: floor(ld_range/dx), но не больше лимита точек."""
        return min(math.floor(self.ld_range / self.dx), self.max_points_per_line)

    @property
    def point_capacity(self) -> int:
        """Теоретическое число точек: floor(ld_range/dx)·max_lines."""
        return math.floor(self.ld_range / self.dx) * self.max_lines

    @property
    def fov_end(self) -> float:
        """Дальняя граница обзора по x."""
        return self.near_offset + self.ld_range

    def grid(self) -> FloatArray:
        """Продольные координаты узлов сетки."""
        return self.near_offset + self.dx * np.arange(self.grid_size, dtype=np.float64)


@dataclass(frozen=True)
class LineObject:
    """Один объект линии, обнаруженный датчиком.

    truth_label: индекс исходной границы; детекторы его не читают.
    """

    id: int
    truth_label: int
    marking_type: MarkingType
    side: Side
    points: tuple[PointXY, ...] = field(repr=False)

    @property
    def xs(self) -> FloatArray:
        """Продольные координаты точек."""
        return np.array([p.x for p in self.points], dtype=np.float64)

    @property
    def ys(self) -> FloatArray:
        """Поперечные координаты точек."""
        return np.array([p.y for p in self.points], dtype=np.float64)

    @property
    def min_abs_y(self) -> float:
        """Минимальное |y| по точкам объекта."""
        return min(abs(p.y) for p in self.points)

    @property
    def preview(self) -> float:
        """Продольная протяжённость объекта."""
        return self.points[-1].x - self.points[0].x


@dataclass(frozen=True)
class SensorCloud:
    """Один кадр выхода датчика."""

    timestamp: float
    left: tuple[LineObject, ...]
    right: tuple[LineObject, ...]
    config: SensorConfig

    @property
    def n_left(self) -> int:
        """Число объектов слева."""
        return len(self.left)

    @property
    def n_right(self) -> int:
        """Число объектов справа."""
        return len(self.right)

    @property
    def objects(self) -> tuple[LineObject, ...]:
        """Все объекты: сначала левые, затем правые."""
        return self.left + self.right

    @property
    def point_count(self) -> int:
        """Общее число точек в кадре."""
        return sum(len(obj.points) for obj in self.objects)

    def inverted(self) -> "SensorCloud":
        """Кадр с перевёрнутым разбиением на стороны."""
        left = tuple(replace(obj, side=obj.side.opposite) for obj in self.right)
        right = tuple(replace(obj, side=obj.side.opposite) for obj in self.left)
        return replace(self, left=left, right=right)


def side_of(first: PointXY) -> Side:
    """Сторона объекта по первой точке: при y < 0 справа, иначе слева."""
    return Side.RIGHT if first.y < 0 else Side.LEFT


@dataclass
class _Fragment:
    boundary: int
    code: MarkingType
    xs: FloatArray
    ys: FloatArray


def _grid_fragment(
    xs: FloatArray, ys: FloatArray, grid: FloatArray, lateral_window: float
) -> tuple[FloatArray, FloatArray]:
    """Значения полилинии в узлах сетки, попадающих в её продольный диапазон."""
    increasing = np.diff(xs) > 0
    if not increasing.all():
        cut = int(np.argmin(increasing)) + 1
        xs, ys = xs[:cut], ys[:cut]
    inside = (grid >= xs[0] - JOINT_TOLERANCE_M) & (grid <= xs[-1] + JOINT_TOLERANCE_M)
    gx = grid[inside]
    gy = np.interp(gx, xs, ys)
    visible = np.abs(gy) <= lateral_window
    return gx[visible], gy[visible]


def _collect_fragments(
    geom: RoadGeometry, ego: EgoPose, cfg: SensorConfig
) -> list[_Fragment]:
    grid = cfg.grid()
    s_lo = max(0.0, ego.s - 1.0)
    s_hi = min(geom.length, ego.s + 1.2 * cfg.fov_end + cfg.lateral_window)
    fragments: list[_Fragment] = []
    for boundary, marking in enumerate(geom.spec.markings):
        pieces: list[_Fragment] = []
        for polyline in sample_marking(geom, boundary, marking, (s_lo, s_hi)):
            xs, ys = geom.to_sensor_frame(polyline.xy, ego)
            gx, gy = _grid_fragment(xs, ys, grid, cfg.lateral_window)
            if gx.size:
                pieces.append(_Fragment(boundary, polyline.code, gx, gy))
        if cfg.merge_fragments and pieces:
            merged_x = np.concatenate([p.xs for p in pieces])
            merged_y = np.concatenate([p.ys for p in pieces])
            order = np.argsort(merged_x, kind="stable")
            pieces = [_Fragment(boundary, pieces[0].code, merged_x[order], merged_y[order])]
        fragments.extend(pieces)
    return fragments


def sense(
    geom: RoadGeometry, ego: EgoPose, cfg: SensorConfig, timestamp: float = 0.0
) -> SensorCloud:
    """Смоделировать один кадр датчика линий.

    Args:
        geom: Геометрия дороги.
        ego: Поза эго-автомобиля.
        cfg: Параметры датчика.
        timestamp: Метка времени кадра.

    Returns:
        Кадр с объектами слева и справа; пустой, если разметки не видно.

    Raises:
        RoadSpecError: Если эго вне дороги.

    """
    if not geom.contains(ego.s):
        raise RoadSpecError(f"ego station {ego.s} outside road [0, {geom.length}]")

    fragments = _collect_fragments(geom, ego, cfg)
    fragments.sort(key=lambda frag: (float(frag.xs[0]), frag.boundary))
    if len(fragments) > cfg.max_lines:
        logger.debug(f"Отброшено {len(fragments) - cfg.max_lines} дальних объектов")
        fragments = fragments[: cfg.max_lines]

    rng = np.random.default_rng(cfg.noise_seed) if cfg.noise_sigma > 0 else None
    left: list[LineObject] = []
    right: list[LineObject] = []
    for line_id, fragment in enumerate(fragments):
        ys = fragment.ys
        if rng is not None:
            ys = ys + rng.normal(0.0, cfg.noise_sigma, size=ys.size)
        points = tuple(
            PointXY(float(x), float(y)) for x, y in zip(fragment.xs, ys, strict=True)
        )
        side = side_of(points[0])
        obj = LineObject(line_id, fragment.boundary, fragment.code, side, points)
        (left if side is Side.LEFT else right).append(obj)

    logger.debug(f"Кадр s={ego.s:.2f}: {len(left)} слева, {len(right)} справа")
    return SensorCloud(timestamp=timestamp, left=tuple(left), right=tuple(right), config=cfg)
