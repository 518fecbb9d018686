"""Типы ALDM: параметры, коэффициенты, пул точек и прослеженные линии."""

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from src.constants.settings import (
    DEFAULT_ADJACENT_MIN_LATERAL_M,
    DEFAULT_MAX_GAP_M,
    DEFAULT_MIN_PREVIEW_M,
    DEFAULT_OUTPUT_POINTS,
    DEFAULT_SEED_MAX_X_M,
    DEFAULT_SEED_MIN_SEPARATION_M,
)
from src.schemas.lane import LineRole, MarkingType
from src.services.line_sensor import LineObject
from src.services.road_model import PointXY

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True)
class AldmParams:
    """Параметры трассировки."""

    max_gap: float = DEFAULT_MAX_GAP_M
    seed_max_x: float = DEFAULT_SEED_MAX_X_M
    seed_min_separation: float = DEFAULT_SEED_MIN_SEPARATION_M
    min_preview: float = DEFAULT_MIN_PREVIEW_M
    adjacent_min_lateral: float = DEFAULT_ADJACENT_MIN_LATERAL_M
    output_points: int = DEFAULT_OUTPUT_POINTS

    def validate(self) -> None:
        """Проверить, что все параметры положительны.

        Raises:
            ValueError: Если параметр не положителен.

        """
        for name in (
            "max_gap",
            "seed_max_x",
            "seed_min_separation",
            "min_preview",
            "adjacent_min_lateral",
            "output_points",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.output_points < 2:
            raise ValueError("output_points must be >= 2")


@dataclass(frozen=True, slots=True)
class QuadCoeffs:
    """y = a·x² + b·x + c."""

    a: float
    b: float
    c: float

    def __call__(self, x: npt.ArrayLike) -> FloatArray:
        """Значение параболы в точках x."""
        x_arr = np.asarray(x, dtype=np.float64)
        return (self.a * x_arr + self.b) * x_arr + self.c


@dataclass(frozen=True, slots=True)
class Provenance:
    """Источник точки: объект датчика и его граница."""

    line_id: int
    truth_label: int
    marking_type: MarkingType
    point_index: int


@dataclass(frozen=True)
class PointPool:
    """Все точки кадра без признака стороны, отсортированные по (x, y, line_id)."""

    x: FloatArray = field(repr=False)
    y: FloatArray = field(repr=False)
    z: FloatArray = field(repr=False)
    line_id: IntArray = field(repr=False)
    truth_label: IntArray = field(repr=False)
    marking_type: IntArray = field(repr=False)
    point_index: IntArray = field(repr=False)

    def __len__(self) -> int:
        return int(self.x.size)

    def point(self, index: int) -> PointXY:
        """Точка пула по индексу."""
        return PointXY(float(self.x[index]), float(self.y[index]), float(self.z[index]))

    def provenance(self, index: int) -> Provenance:
        """Источник точки пула."""
        return Provenance(
            line_id=int(self.line_id[index]),
            truth_label=int(self.truth_label[index]),
            marking_type=MarkingType(int(self.marking_type[index])),
            point_index=int(self.point_index[index]),
        )


@dataclass(frozen=True)
class TracedLine:
    """Прослеженная линия: точки по возрастанию x и их происхождение."""

    role: LineRole
    points: tuple[PointXY, ...]
    provenance: tuple[Provenance, ...] = field(repr=False)
    pool_indices: tuple[int, ...] = field(default=(), repr=False)
    warnings: tuple[str, ...] = ()

    @classmethod
    def from_line_object(cls, obj: LineObject, role: LineRole) -> "TracedLine":
        """Обернуть объект датчика как линию с заданной ролью."""
        provenance = tuple(
            Provenance(obj.id, obj.truth_label, obj.marking_type, index)
            for index in range(len(obj.points))
        )
        return cls(role=role, points=obj.points, provenance=provenance)

    @property
    def xs(self) -> FloatArray:
        """Продольные координаты."""
        return np.array([p.x for p in self.points], dtype=np.float64)

    @property
    def ys(self) -> FloatArray:
        """Поперечные координаты."""
        return np.array([p.y for p in self.points], dtype=np.float64)

    @property
    def preview(self) -> float:
        """Продольная протяжённость линии."""
        if not self.points:
            return 0.0
        return self.points[-1].x - self.points[0].x

    @property
    def max_gap(self) -> float:
        """Наибольший шаг по x между соседними точками."""
        if len(self.points) < 2:
            return 0.0
        return float(np.diff(self.xs).max())

    @property
    def truth_labels(self) -> tuple[int, ...]:
        """Отсортированные различные границы-источники."""
        return tuple(sorted({p.truth_label for p in self.provenance}))

    def purity(self, expected_boundary: int) -> float:
        """Доля точек, пришедших с ожидаемой границы."""
        if not self.provenance:
            return 0.0
        hits = sum(1 for p in self.provenance if p.truth_label == expected_boundary)
        return hits / len(self.provenance)


@dataclass(frozen=True)
class Seeds:
    """Три стартовые точки линии по возрастанию x."""

    indices: tuple[int, int, int]
    points: tuple[PointXY, PointXY, PointXY]


@dataclass(frozen=True)
class LaneSet:
    """Направляющие линии текущей полосы и, если есть, соседних."""

    ego_left: TracedLine
    ego_right: TracedLine
    adjacent_left: TracedLine | None = None
    adjacent_right: TracedLine | None = None

    @property
    def lines(self) -> dict[LineRole, TracedLine]:
        """Найденные линии по ролям."""
        found = {
            LineRole.EGO_LEFT: self.ego_left,
            LineRole.EGO_RIGHT: self.ego_right,
            LineRole.ADJACENT_LEFT: self.adjacent_left,
            LineRole.ADJACENT_RIGHT: self.adjacent_right,
        }
        return {role: line for role, line in found.items() if line is not None}

    def is_ordered(self) -> bool:
        """Левая граница лежит левее правой на общем участке по x."""
        left_x, right_x = self.ego_left.xs, self.ego_right.xs
        lo, hi = max(left_x[0], right_x[0]), min(left_x[-1], right_x[-1])
        if hi <= lo:
            return True
        xs_check = np.linspace(lo, hi, 16)
        left_y = np.interp(xs_check, left_x, self.ego_left.ys)
        right_y = np.interp(xs_check, right_x, self.ego_right.ys)
        return bool((left_y > right_y).all())
