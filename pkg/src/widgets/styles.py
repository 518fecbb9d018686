"""Colors and pens for frame plots."""

from PySide6.QtCore import Qt
from PySide6.QtGui import QColor, QPen

from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName

BACKGROUND_COLOR = QColor(255, 255, 255)
GRID_COLOR = QColor(220, 220, 220)
AXIS_COLOR = QColor(60, 60, 60)
TEXT_COLOR = QColor(40, 40, 40)
POOL_POINT_COLOR = QColor(150, 150, 150)
TRUTH_COLOR = QColor(0, 0, 0, 120)
CENTERLINE_COLOR = QColor(30, 160, 60)

ROLE_COLORS = {
    LineRole.EGO_LEFT: QColor(210, 50, 50),
    LineRole.EGO_RIGHT: QColor(40, 90, 210),
    LineRole.ADJACENT_LEFT: QColor(230, 140, 30),
    LineRole.ADJACENT_RIGHT: QColor(140, 60, 190),
}

POINT_RADIUS_PX = 2.0
TRACED_POINT_RADIUS_PX = 3.5
FONT_SIZE_PT = 9
MARGIN_PX = 40


def line_pen(role: LineRole, detector: DetectorName) -> QPen:
    """Pen for a traced line; the baseline is drawn dashed."""
    pen = QPen(ROLE_COLORS[role], 1.5)
    if detector is DetectorName.BASELINE:
        pen.setStyle(Qt.PenStyle.DashLine)
    return pen


def fit_pen(role: LineRole) -> QPen:
    """Pen for a fitted cubic trend line."""
    pen = QPen(ROLE_COLORS[role], 1.0)
    pen.setStyle(Qt.PenStyle.DotLine)
    return pen


def centerline_pen() -> QPen:
    """Pen for the desired trajectory."""
    return QPen(CENTERLINE_COLOR, 2.0)


def grid_pen() -> QPen:
    """Pen for grid lines."""
    return QPen(GRID_COLOR, 0.5)
