"""Кубические линии тренда для границ полосы и желаемая траектория по её середине."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial

from src.constants.settings import CENTER_SAMPLES, CUBIC_MIN_POINTS
from src.services.aldm.types import TracedLine
from src.services.errors import DegenerateInputError, FrameError
from src.services.road_model import CenterlineTruth, PointXY

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class CubicCoeffs:
    """y = c3·x³ + c2·x² + c1·x + c0."""

    c0: float
    c1: float
    c2: float
    c3: float

    def __call__(self, x: npt.ArrayLike) -> FloatArray:
        """Значение кубики в точках x."""
        x_arr = np.asarray(x, dtype=np.float64)
        return ((self.c3 * x_arr + self.c2) * x_arr + self.c1) * x_arr + self.c0


def fit_cubic(points: Sequence[PointXY]) -> CubicCoeffs:
    """Кубика наименьших квадратов через нормальные уравнения.

    x центрируется и масштабируется до [-1, 1], система 4×4 решается
    LU-разложением с частичным выбором ведущего элемента, затем
    коэффициенты переводятся обратно к исходному x.

    Args:
        points: Не менее четырёх точек с различными x.

    Returns:
        Коэффициенты кубики.

    Raises:
        DegenerateInputError: Если различных x меньше четырёх или система вырождена.

    """
    xs = np.array([p.x for p in points], dtype=np.float64)
    ys = np.array([p.y for p in points], dtype=np.float64)
    if np.unique(xs).size < CUBIC_MIN_POINTS:
        raise DegenerateInputError(
            f"cubic fit needs {CUBIC_MIN_POINTS} distinct x, got {np.unique(xs).size}"
        )

    mean = float(xs.mean())
    half_span = float(np.abs(xs - mean).max())
    u = (xs - mean) / half_span
    design = np.vander(u, CUBIC_MIN_POINTS, increasing=True)
    try:
        coef_u = np.linalg.solve(design.T @ design, design.T @ ys)
    except np.linalg.LinAlgError as e:
        raise DegenerateInputError(f"rank-deficient cubic system: {e}") from e

    in_x = Polynomial(coef_u)(Polynomial([-mean / half_span, 1.0 / half_span]))
    coef = np.zeros(CUBIC_MIN_POINTS)
    coef[: in_x.coef.size] = in_x.coef
    return CubicCoeffs(*(float(c) for c in coef))


@dataclass(frozen=True)
class Trajectory:
    """Линии тренда обеих границ и осевая линия между ними."""

    left: CubicCoeffs
    right: CubicCoeffs
    center_samples: tuple[PointXY, ...]

    @property
    def x_range(self) -> tuple[float, float]:
        """Общий участок границ по x."""
        return self.center_samples[0].x, self.center_samples[-1].x

    def center(self, x: npt.ArrayLike) -> FloatArray:
        """Середина между линиями тренда."""
        return (self.left(x) + self.right(x)) / 2

    def error_against(self, truth: CenterlineTruth) -> tuple[float, float]:
        """Максимальное и среднее |Δy| до эталона на общем участке.

        Raises:
            FrameError: Если эталон не попадает на общий участок.

        """
        lo, hi = self.x_range
        xs, ys = truth.xs, truth.ys
        inside = (xs >= lo) & (xs <= hi)
        if not inside.any():
            raise FrameError(f"ground truth does not cover x in [{lo:.2f}, {hi:.2f}]")
        deltas = np.abs(self.center(xs[inside]) - ys[inside])
        return float(deltas.max()), float(deltas.mean())


def compute_trajectory(
    left: TracedLine, right: TracedLine, samples: int = CENTER_SAMPLES
) -> Trajectory:
    """Построить желаемую траекторию по двум границам полосы.

    Args:
        left: Левая граница (обычно 13 точек).
        right: Правая граница.
        samples: Число точек осевой линии.

    Returns:
        Траектория с осевой линией на общем участке границ.

    Raises:
        DegenerateInputError: Если кубику по границе построить нельзя.
        FrameError: Если границы не перекрываются по x.

    """
    left_fit = fit_cubic(left.points)
    right_fit = fit_cubic(right.points)

    lo = max(left.points[0].x, right.points[0].x)
    hi = min(left.points[-1].x, right.points[-1].x)
    if hi <= lo:
        raise FrameError(f"boundaries do not overlap in x ({lo:.2f} >= {hi:.2f})")

    xs = np.linspace(lo, hi, samples)
    ys = (left_fit(xs) + right_fit(xs)) / 2
    center = tuple(PointXY(float(x), float(y)) for x, y in zip(xs, ys, strict=True))
    return Trajectory(left=left_fit, right=right_fit, center_samples=center)
