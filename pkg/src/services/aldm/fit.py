"""Парабола через три точки: обратная матрица 3×3 через присоединённую."""

from src.services.aldm.types import QuadCoeffs
from src.services.errors import DegenerateInputError
from src.services.road_model import PointXY

_DET_RELATIVE_EPS = 1e-14


def fit_quadratic(a: PointXY, b: PointXY, c: PointXY) -> QuadCoeffs:
    """Коэффициенты y = a·x² + b·x + c, точно проходящей через три точки.

    Матрица Вандермонда [[x², x, 1], ...] обращается явно: inv = adj / det.

    Args:
        a: Первая точка.
        b: Вторая точка.
        c: Третья точка.

    Returns:
        Коэффициенты параболы.

    Raises:
        DegenerateInputError: Если среди x есть совпадающие.

    """
    xa, xb, xc = a.x, b.x, c.x
    if xa == xb or xb == xc or xa == xc:
        raise DegenerateInputError(f"duplicate x among ({xa}, {xb}, {xc})")

    m = (
        (xa * xa, xa, 1.0),
        (xb * xb, xb, 1.0),
        (xc * xc, xc, 1.0),
    )
    # Cofactors C[i][j], the adjugate is their transpose
    c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1]
    c01 = -(m[1][0] * m[2][2] - m[1][2] * m[2][0])
    c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0]
    c10 = -(m[0][1] * m[2][2] - m[0][2] * m[2][1])
    c11 = m[0][0] * m[2][2] - m[0][2] * m[2][0]
    c12 = -(m[0][0] * m[2][1] - m[0][1] * m[2][0])
    c20 = m[0][1] * m[1][2] - m[0][2] * m[1][1]
    c21 = -(m[0][0] * m[1][2] - m[0][2] * m[1][0])
    c22 = m[0][0] * m[1][1] - m[0][1] * m[1][0]

    det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02
    scale = max(abs(v) for row in m for v in row) ** 3
    if abs(det) <= _DET_RELATIVE_EPS * scale:
        raise DegenerateInputError(f"singular system for x = ({xa}, {xb}, {xc})")

    ya, yb, yc = a.y, b.y, c.y
    return QuadCoeffs(
        a=(c00 * ya + c10 * yb + c20 * yc) / det,
        b=(c01 * ya + c11 * yb + c21 * yc) / det,
        c=(c02 * ya + c12 * yb + c22 * yc) / det,
    )


def fit_linear(a: PointXY, b: PointXY) -> QuadCoeffs:
    """Прямая через две точки как вырожденная парабола.

    Raises:
        DegenerateInputError: Если x совпадают.

    """
    if a.x == b.x:
        raise DegenerateInputError(f"duplicate x {a.x}")
    slope = (b.y - a.y) / (b.x - a.x)
    return QuadCoeffs(a=0.0, b=slope, c=a.y - slope * a.x)
