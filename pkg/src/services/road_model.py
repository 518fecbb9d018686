"""Синтетическая геометрия дороги, разметка и эталонная осевая линия полосы.

Мировая система: x на восток, y на север, курс против часовой стрелки от оси x.
Система датчика: x вперёд, y влево. Смещения границ положительны влево.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from loguru import logger

from src.constants.settings import (
    DEFAULT_DASH_LEN_M,
    DEFAULT_DOT_GAP_M,
    DEFAULT_DOT_LEN_M,
    DEFAULT_GAP_LEN_M,
    DEFAULT_LANE_WIDTH_M,
    DEFAULT_VEHICLE_WIDTH_M,
    GROUND_TRUTH_STEP_M,
    JOINT_TOLERANCE_M,
    MARKING_SAMPLE_STEP_M,
    MIN_CURVE_RADIUS_BY_SPEED,
    RECOMMENDED_CURVE_RADIUS_M,
    WORST_DASH_MARGIN_M,
)
from src.schemas.lane import MarkingType
from src.services.errors import RoadSpecError

FloatArray = npt.NDArray[np.float64]

TRUTH_SAMPLE_STEP_M = 0.02


@dataclass(frozen=True, slots=True)
class Straight:
    """Прямой участок."""

    length: float


@dataclass(frozen=True, slots=True)
class Arc:
    """Дуга окружности; при sweep > 0 поворот влево, при sweep < 0 вправо."""

    radius: float
    sweep: float

    @property
    def length(self) -> float:
        """Длина дуги R·|θ|."""
        return self.radius * abs(self.sweep)

    @property
    def curvature(self) -> float:
        """Кривизна со знаком."""
        return math.copysign(1.0 / self.radius, self.sweep)


type Segment = Straight | Arc


@dataclass(frozen=True, slots=True)
class NoMarking:
    """Граница без разметки."""

    code: MarkingType = MarkingType.NONE


@dataclass(frozen=True, slots=True)
class Continuous:
    """Сплошная линия."""

    code: MarkingType = MarkingType.CONTINUOUS


@dataclass(frozen=True)
class Dashed:
    """Прерывистая линия: штрих dash_len, разрыв gap_len, начало штриха в s ≡ phase."""

    dash_len: float = DEFAULT_DASH_LEN_M
    gap_len: float = DEFAULT_GAP_LEN_M
    phase: float = 0.0
    code: MarkingType = MarkingType.DASHED

    @property
    def period(self) -> float:
        """Длина цикла штрих + разрыв."""
        return self.dash_len + self.gap_len


@dataclass(frozen=True)
class Dotted(Dashed):
    """Пунктир: тот же шаблон, что и у прерывистой, но с кодом 3."""

    dash_len: float = DEFAULT_DOT_LEN_M
    gap_len: float = DEFAULT_DOT_GAP_M
    phase: float = 0.0
    code: MarkingType = MarkingType.DOTTED


type MarkingSpec = NoMarking | Continuous | Dashed


def min_curve_radius(speed_kmh: float) -> float:
    """Минимальный радиус кривой для расчётной скорости.

    Берётся ближайшая табличная скорость не ниже заданной; выше таблицы
    используется самая высокая строка.

    Args:
        speed_kmh: Скорость на входе в кривую, км/ч.

    Returns:
        Минимальный радиус в метрах.

    """
    speeds = sorted(MIN_CURVE_RADIUS_BY_SPEED)
    for speed in speeds:
        if speed_kmh <= speed:
            return MIN_CURVE_RADIUS_BY_SPEED[speed]
    return MIN_CURVE_RADIUS_BY_SPEED[speeds[-1]]


@dataclass(frozen=True)
class RoadSpec:
    """Описание дороги: сегменты, полосы и разметка каждой границы.

    Пустой boundary_markings означает разметку по умолчанию: крайние
    границы сплошные, внутренние прерывистые 6/12.
    """

    segments: tuple[Segment, ...]
    lane_count: int = 1
    lane_width: float = DEFAULT_LANE_WIDTH_M
    boundary_markings: tuple[MarkingSpec, ...] = ()
    design_speed: float | None = None

    @property
    def markings(self) -> tuple[MarkingSpec, ...]:
        """Разметка для границ 0..lane_count (справа налево)."""
        if self.boundary_markings:
            return self.boundary_markings
        inner: tuple[MarkingSpec, ...] = tuple(Dashed() for _ in range(self.lane_count - 1))
        return (Continuous(), *inner, Continuous())

    def validate(self) -> None:
        """Проверить инварианты описания.

        Raises:
            RoadSpecError: Если описание нарушает инварианты.

        """
        if not self.segments:
            raise RoadSpecError("road needs at least one segment")
        for index, segment in enumerate(self.segments):
            _validate_segment(index, segment)
        if self.lane_count < 1:
            raise RoadSpecError(f"lane_count must be >= 1, got {self.lane_count}")
        if self.lane_width <= 0:
            raise RoadSpecError(f"lane_width must be > 0, got {self.lane_width}")
        if len(self.markings) != self.lane_count + 1:
            raise RoadSpecError(
                f"expected {self.lane_count + 1} boundary markings, got {len(self.markings)}"
            )
        for index, marking in enumerate(self.markings):
            if isinstance(marking, Dashed):
                _validate_dashed(index, marking)


def _validate_segment(index: int, segment: Segment) -> None:
    if isinstance(segment, Straight):
        if segment.length <= 0:
            raise RoadSpecError(f"segment {index}: length must be > 0")
        return
    if segment.radius <= 0:
        raise RoadSpecError(f"segment {index}: radius must be > 0")
    if segment.sweep == 0:
        raise RoadSpecError(f"segment {index}: sweep must be non-zero")


def _validate_dashed(index: int, marking: Dashed) -> None:
    if marking.dash_len <= 0:
        raise RoadSpecError(f"boundary {index}: dash_len must be > 0")
    if marking.gap_len < 0:
        raise RoadSpecError(f"boundary {index}: gap_len must be >= 0")
    if not 0 <= marking.phase < marking.period:
        raise RoadSpecError(f"boundary {index}: phase must lie in [0, {marking.period})")


@dataclass(frozen=True, slots=True)
class EgoPose:
    """Положение эго-автомобиля относительно центра полосы `lane`."""

    s: float
    lateral_offset: float = 0.0
    heading_offset: float = 0.0
    lane: int = 0


@dataclass(frozen=True, slots=True)
class PointXY:
    """Точка в системе датчика (м)."""

    x: float
    y: float
    z: float = 0.0


@dataclass(frozen=True)
class MarkingPolyline:
    """Полилиния одного штриха (или всей сплошной линии) в мировых координатах."""

    boundary: int
    code: MarkingType
    s: FloatArray = field(repr=False)
    xy: FloatArray = field(repr=False)

    @property
    def s_start(self) -> float:
        """Начало по s."""
        return float(self.s[0])

    @property
    def s_end(self) -> float:
        """Конец по s."""
        return float(self.s[-1])


@dataclass(frozen=True)
class CenterlineTruth:
    """Эталонная осевая линия полосы в системе датчика."""

    points: tuple[PointXY, ...]
    truncated: bool

    @property
    def xs(self) -> FloatArray:
        """Продольные координаты."""
        return np.array([p.x for p in self.points], dtype=np.float64)

    @property
    def ys(self) -> FloatArray:
        """Поперечные координаты."""
        return np.array([p.y for p in self.points], dtype=np.float64)


class RoadGeometry:
    """Неизменяемая геометрия дороги, параметризованная длиной дуги осевой линии."""

    def __init__(self, spec: RoadSpec) -> None:
        """Посчитать начальные состояния всех сегментов.

        Args:
            spec: Проверенное описание дороги.

        """
        self.spec = spec
        count = len(spec.segments)
        self._starts = np.zeros(count, dtype=np.float64)
        self._lengths = np.array([seg.length for seg in spec.segments], dtype=np.float64)
        self._curvatures = np.array(
            [seg.curvature if isinstance(seg, Arc) else 0.0 for seg in spec.segments],
            dtype=np.float64,
        )
        self._origins = np.zeros((count, 2), dtype=np.float64)
        self._headings = np.zeros(count, dtype=np.float64)

        for i in range(1, count):
            self._starts[i] = self._starts[i - 1] + self._lengths[i - 1]
            end_xy, end_heading = _advance(
                self._origins[i - 1],
                float(self._headings[i - 1]),
                float(self._curvatures[i - 1]),
                float(self._lengths[i - 1]),
            )
            self._origins[i] = end_xy
            self._headings[i] = end_heading

        for array in (self._starts, self._lengths, self._curvatures, self._origins, self._headings):
            array.setflags(write=False)

    @property
    def length(self) -> float:
        """Полная длина дороги."""
        return float(self._starts[-1] + self._lengths[-1])

    @property
    def lane_count(self) -> int:
        """Число полос."""
        return self.spec.lane_count

    @property
    def lane_width(self) -> float:
        """Ширина полосы."""
        return self.spec.lane_width

    def boundary_offset(self, boundary: int) -> float:
        """Поперечное смещение границы k: (k − L/2)·w."""
        return (boundary - self.lane_count / 2) * self.lane_width

    def lane_center_offset(self, lane: int) -> float:
        """Поперечное смещение центра полосы."""
        return (lane + 0.5 - self.lane_count / 2) * self.lane_width

    def pose(self, s: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Положение и курс осевой линии для массива s.

        Args:
            s: Станции вдоль осевой линии.

        Returns:
            Массив (n, 2) мировых координат и массив курсов (рад).

        """
        s_arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
        index = np.clip(np.searchsorted(self._starts, s_arr, side="right") - 1, 0, None)
        ds = s_arr - self._starts[index]
        kappa = self._curvatures[index]
        h0 = self._headings[index]
        heading = h0 + kappa * ds

        is_arc = kappa != 0.0
        safe_kappa = np.where(is_arc, kappa, 1.0)
        dx = np.where(
            is_arc, (np.sin(heading) - np.sin(h0)) / safe_kappa, ds * np.cos(h0)
        )
        dy = np.where(
            is_arc, (np.cos(h0) - np.cos(heading)) / safe_kappa, ds * np.sin(h0)
        )
        xy = self._origins[index] + np.column_stack((dx, dy))
        return xy, heading

    def position(self, s: float) -> FloatArray:
        """Мировые координаты осевой линии в точке s."""
        xy, _ = self.pose(s)
        return xy[0]

    def heading(self, s: float) -> float:
        """Курс осевой линии в точке s."""
        _, heading = self.pose(s)
        return float(heading[0])

    def offset_points(self, s: npt.ArrayLike, offset: float) -> FloatArray:
        """Точки линии, смещённой от осевой на `offset` (влево положительно)."""
        xy, heading = self.pose(s)
        normal = np.column_stack((-np.sin(heading), np.cos(heading)))
        return xy + offset * normal

    def ego_frame(self, ego: EgoPose) -> tuple[FloatArray, float]:
        """Начало и курс системы датчика для позы эго."""
        offset = self.lane_center_offset(ego.lane) + ego.lateral_offset
        origin = self.offset_points(ego.s, offset)[0]
        return origin, self.heading(ego.s) + ego.heading_offset

    def to_sensor_frame(self, xy: FloatArray, ego: EgoPose) -> tuple[FloatArray, FloatArray]:
        """Перевести мировые точки в систему датчика.

        Returns:
            Продольные и поперечные координаты.

        """
        origin, theta = self.ego_frame(ego)
        d = xy - origin
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        x = d[:, 0] * cos_t + d[:, 1] * sin_t
        y = -d[:, 0] * sin_t + d[:, 1] * cos_t
        return x, y

    def contains(self, s: float) -> bool:
        """Лежит ли станция в пределах дороги."""
        return -JOINT_TOLERANCE_M <= s <= self.length + JOINT_TOLERANCE_M


def _advance(
    origin: FloatArray, heading: float, curvature: float, length: float
) -> tuple[FloatArray, float]:
    end_heading = heading + curvature * length
    if curvature == 0.0:
        step = np.array([math.cos(heading), math.sin(heading)]) * length
    else:
        step = np.array(
            [
                (math.sin(end_heading) - math.sin(heading)) / curvature,
                (math.cos(heading) - math.cos(end_heading)) / curvature,
            ]
        )
    return origin + step, end_heading


def build_road(spec: RoadSpec) -> RoadGeometry:
    """Построить геометрию дороги.

    Args:
        spec: Описание дороги.

    Returns:
        Неизменяемая геометрия.

    Raises:
        RoadSpecError: Если описание нарушает инварианты.

    """
    spec.validate()
    limit = min_curve_radius(spec.design_speed) if spec.design_speed is not None else None
    for index, segment in enumerate(spec.segments):
        if not isinstance(segment, Arc):
            continue
        if limit is not None and segment.radius < limit:
            logger.warning(
                f"Сегмент {index}: радиус {segment.radius} м меньше минимального "
                f"{limit} м для {spec.design_speed} км/ч"
            )
        elif segment.radius < RECOMMENDED_CURVE_RADIUS_M:
            logger.info(
                f"Сегмент {index}: радиус {segment.radius} м меньше рекомендуемого "
                f"{RECOMMENDED_CURVE_RADIUS_M} м"
            )
    geometry = RoadGeometry(spec)
    logger.debug(
        f"Дорога построена: {len(spec.segments)} сегм., {geometry.length:.2f} м, "
        f"{spec.lane_count} пол."
    )
    return geometry


def dash_intervals(marking: Dashed, s_lo: float, s_hi: float) -> list[tuple[float, float]]:
    """Интервалы штрихов, пересекающие [s_lo, s_hi], обрезанные по нему."""
    period = marking.period
    k = math.floor((s_lo - marking.phase) / period)
    intervals: list[tuple[float, float]] = []
    while (start := marking.phase + k * period) < s_hi:
        lo, hi = max(start, s_lo), min(start + marking.dash_len, s_hi)
        if hi - lo > JOINT_TOLERANCE_M:
            intervals.append((lo, hi))
        k += 1
    return intervals


def sample_marking(
    geom: RoadGeometry,
    boundary: int,
    marking: MarkingSpec,
    s_range: tuple[float, float],
    step: float = MARKING_SAMPLE_STEP_M,
) -> list[MarkingPolyline]:
    """Разбить разметку границы на полилинии: по одной на штрих.

    Args:
        geom: Геометрия дороги.
        boundary: Индекс границы (0: правая крайняя).
        marking: Тип разметки.
        s_range: Интервал станций.
        step: Шаг дискретизации полилинии.

    Returns:
        Полилинии с меткой границы.

    Raises:
        RoadSpecError: Если интервал выходит за пределы дороги.

    """
    s_lo, s_hi = s_range
    if not (geom.contains(s_lo) and geom.contains(s_hi)) or s_hi < s_lo:
        raise RoadSpecError(f"s range {s_range} outside road [0, {geom.length}]")

    if isinstance(marking, NoMarking):
        return []
    if isinstance(marking, Dashed):
        intervals = dash_intervals(marking, s_lo, s_hi)
    else:
        intervals = [(s_lo, s_hi)] if s_hi > s_lo else []

    offset = geom.boundary_offset(boundary)
    polylines = []
    for lo, hi in intervals:
        count = max(2, math.ceil((hi - lo) / step) + 1)
        s = np.linspace(lo, hi, count)
        xy = geom.offset_points(s, offset)
        s.setflags(write=False)
        xy.setflags(write=False)
        polylines.append(MarkingPolyline(boundary=boundary, code=marking.code, s=s, xy=xy))
    return polylines


def _monotone_prefix(xs: FloatArray) -> int:
    """Длина начального участка со строго возрастающим x."""
    steps = np.diff(xs) <= 0
    if not steps.any():
        return len(xs)
    return int(np.argmax(steps)) + 1


def ground_truth_centerline(
    geom: RoadGeometry,
    lane: int,
    ego: EgoPose,
    preview: float,
    step: float = GROUND_TRUTH_STEP_M,
) -> CenterlineTruth:
    """Эталонная осевая линия полосы в системе датчика, каждые `step` метров по x.

    Args:
        geom: Геометрия дороги.
        lane: Индекс полосы.
        ego: Поза эго-автомобиля.
        preview: Дальность просмотра, м.
        step: Шаг по x.

    Returns:
        Точки от x = 0 до preview; truncated=True, если дорога кончилась раньше.

    Raises:
        RoadSpecError: Если полосы не существует.

    """
    if not 0 <= lane < geom.lane_count:
        raise RoadSpecError(f"lane {lane} outside 0..{geom.lane_count - 1}")

    s_lo = max(0.0, ego.s - 5.0)
    count = max(2, math.ceil((geom.length - s_lo) / TRUTH_SAMPLE_STEP_M) + 1)
    s = np.linspace(s_lo, geom.length, count)
    xs, ys = geom.to_sensor_frame(geom.offset_points(s, geom.lane_center_offset(lane)), ego)
    keep = _monotone_prefix(xs)
    xs, ys = xs[:keep], ys[:keep]

    query = np.arange(0.0, preview + step / 2, step)
    visible = (query >= xs[0] - JOINT_TOLERANCE_M) & (query <= xs[-1] + JOINT_TOLERANCE_M)
    truncated = not bool(visible.all())
    query = query[visible]
    values = np.interp(query, xs, ys)
    if truncated:
        logger.warning(
            f"Эталон полосы {lane} обрезан: дорога видна только до x={xs[-1]:.1f} м"
        )
    points = tuple(PointXY(float(x), float(y)) for x, y in zip(query, values, strict=True))
    return CenterlineTruth(points=points, truncated=truncated)


def leftmost_pose(
    geom: RoadGeometry, lane: int, s: float, vehicle_width: float = DEFAULT_VEHICLE_WIDTH_M
) -> EgoPose:
    """Крайнее левое положение в полосе, при котором колёса не касаются левой линии."""
    return EgoPose(s=s, lateral_offset=(geom.lane_width - vehicle_width) / 2, lane=lane)


def phase_hiding_dash(
    geom: RoadGeometry,
    boundary: int,
    ego: EgoPose,
    near_offset: float,
    marking: Dashed,
    margin: float = WORST_DASH_MARGIN_M,
) -> float:
    """Фаза штрихов, при которой штрих кончается чуть раньше ближней точки обзора.

    Следующий штрих тогда максимально далёк от датчика.

    Args:
        geom: Геометрия дороги.
        boundary: Индекс границы.
        ego: Поза эго-автомобиля.
        near_offset: Ближайшая обнаруживаемая точка датчика по x.
        marking: Шаблон штрихов (dash_len/gap_len).
        margin: Запас по s до ближней точки.

    Returns:
        Фаза в [0, dash_len + gap_len).

    """
    s_hi = min(geom.length, ego.s + 2 * near_offset + 10.0)
    s = np.linspace(ego.s, s_hi, max(2, math.ceil((s_hi - ego.s) / TRUTH_SAMPLE_STEP_M) + 1))
    xs, _ = geom.to_sensor_frame(geom.offset_points(s, geom.boundary_offset(boundary)), ego)
    s_hit = float(np.interp(near_offset, xs, s))
    dash_end = s_hit - margin
    return (dash_end - marking.dash_len) % marking.period
