"""SVG-графики кадра: точки датчика, найденные линии, линии тренда и траектория.

Оси как на графиках распознавания: по горизонтали поперечное расстояние
(левая сторона автомобиля слева), по вертикали продольное расстояние.
"""

import os
from pathlib import Path

import numpy as np
from loguru import logger
from PySide6.QtCore import QBuffer, QIODevice, Qt, QPointF, QRect, QRectF, QSize
from PySide6.QtGui import QFont, QGuiApplication, QPainter, QPainterPath, QPen
from PySide6.QtSvg import QSvgGenerator

from src.constants.path import Files
from src.constants.settings import (
    PLOT_HEIGHT_PX,
    PLOT_LATERAL_RANGE_M,
    PLOT_LONGITUDINAL_RANGE_M,
    PLOT_WIDTH_PX,
)
from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.errors import PlotError
from src.services.road_model import PointXY
from src.services.scenario import FrameResult
from src.widgets import styles

_app: QGuiApplication | None = None


def ensure_gui_app() -> None:
    """Создать QGuiApplication для рисования без окна, если его ещё нет."""
    global _app  # noqa: PLW0603
    if QGuiApplication.instance() is None:
        os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")
        _app = QGuiApplication([])


class PlotFrame:
    """Перевод координат датчика (x вперёд, y влево) в пиксели области графика."""

    def __init__(
        self,
        rect: QRect,
        lateral: tuple[float, float] = PLOT_LATERAL_RANGE_M,
        longitudinal: tuple[float, float] = PLOT_LONGITUDINAL_RANGE_M,
    ) -> None:
        """Initialize the mapping.

        Args:
            rect: Область графика в пикселях.
            lateral: Диапазон y, м.
            longitudinal: Диапазон x, м.

        """
        self.rect = QRectF(rect)
        self.lateral = lateral
        self.longitudinal = longitudinal

    def map(self, x: float, y: float) -> QPointF:
        """Пиксель для точки датчика."""
        y_lo, y_hi = self.lateral
        x_lo, x_hi = self.longitudinal
        px = self.rect.left() + (y_hi - y) / (y_hi - y_lo) * self.rect.width()
        py = self.rect.bottom() - (x - x_lo) / (x_hi - x_lo) * self.rect.height()
        return QPointF(px, py)

    def contains(self, x: float, y: float) -> bool:
        """Попадает ли точка в диапазон осей."""
        return (
            self.lateral[0] <= y <= self.lateral[1]
            and self.longitudinal[0] <= x <= self.longitudinal[1]
        )


def _paint_axes(painter: QPainter, plot: PlotFrame) -> None:
    painter.setFont(QFont("DejaVu Sans", styles.FONT_SIZE_PT))
    y_lo, y_hi = plot.lateral
    x_lo, x_hi = plot.longitudinal
    for y in range(int(np.ceil(y_lo)), int(np.floor(y_hi)) + 1):
        if y % 5:
            continue
        painter.setPen(styles.grid_pen())
        painter.drawLine(plot.map(x_lo, y), plot.map(x_hi, y))
        painter.setPen(styles.TEXT_COLOR)
        painter.drawText(plot.map(x_lo, y) + QPointF(-6, 14), f"{y}")
    for x in range(int(x_lo), int(x_hi) + 1, 20):
        painter.setPen(styles.grid_pen())
        painter.drawLine(plot.map(x, y_lo), plot.map(x, y_hi))
        painter.setPen(styles.TEXT_COLOR)
        painter.drawText(plot.map(x, y_hi) + QPointF(-30, 4), f"{x}")
    painter.setPen(QPen(styles.AXIS_COLOR, 1.0))
    painter.drawRect(plot.rect)
    painter.drawText(
        plot.rect.bottomLeft() + QPointF(plot.rect.width() / 2 - 60, 30), "lateral distance in m"
    )


def _polyline(plot: PlotFrame, points: list[PointXY]) -> QPainterPath:
    path = QPainterPath()
    inside = [p for p in points if plot.contains(p.x, p.y)]
    if inside:
        path.moveTo(plot.map(inside[0].x, inside[0].y))
        for p in inside[1:]:
            path.lineTo(plot.map(p.x, p.y))
    return path


def _paint_points(painter: QPainter, plot: PlotFrame, frame: FrameResult) -> None:
    if frame.cloud is None:
        return
    painter.setPen(styles.POOL_POINT_COLOR)
    painter.setBrush(styles.POOL_POINT_COLOR)
    for obj in frame.cloud.objects:
        for p in obj.points:
            if plot.contains(p.x, p.y):
                painter.drawEllipse(
                    plot.map(p.x, p.y), styles.POINT_RADIUS_PX, styles.POINT_RADIUS_PX
                )


def _paint_detections(painter: QPainter, plot: PlotFrame, frame: FrameResult) -> None:
    for detector, outcome in frame.outcomes.items():
        for role, line in outcome.lines.items():
            painter.setBrush(Qt.BrushStyle.NoBrush)
            painter.setPen(styles.line_pen(role, detector))
            painter.drawPath(_polyline(plot, list(line.points)))
        if detector is not DetectorName.ALDM:
            continue
        for role, line in outcome.transmitted.items():
            painter.setPen(styles.ROLE_COLORS[role])
            painter.setBrush(styles.ROLE_COLORS[role])
            for p in line.points:
                if plot.contains(p.x, p.y):
                    painter.drawEllipse(
                        plot.map(p.x, p.y),
                        styles.TRACED_POINT_RADIUS_PX,
                        styles.TRACED_POINT_RADIUS_PX,
                    )


def _paint_trajectory(painter: QPainter, plot: PlotFrame, frame: FrameResult) -> None:
    painter.setBrush(Qt.BrushStyle.NoBrush)
    if frame.truth is not None:
        painter.setPen(QPen(styles.TRUTH_COLOR, 0.8))
        painter.drawPath(_polyline(plot, list(frame.truth.points)))

    trajectory = frame.trajectories.get(DetectorName.ALDM)
    if trajectory is None:
        return
    lo, hi = trajectory.x_range
    xs = np.linspace(lo, hi, 60)
    for role, fit in ((LineRole.EGO_LEFT, trajectory.left), (LineRole.EGO_RIGHT, trajectory.right)):
        painter.setPen(styles.fit_pen(role))
        curve = [PointXY(float(x), float(y)) for x, y in zip(xs, fit(xs), strict=True)]
        painter.drawPath(_polyline(plot, curve))
    painter.setPen(styles.centerline_pen())
    painter.drawPath(_polyline(plot, list(trajectory.center_samples)))


def paint_frame(painter: QPainter, rect: QRect, frame: FrameResult) -> None:
    """Нарисовать кадр в заданной области.

    Args:
        painter: Экземпляр QPainter.
        rect: Вся область рисования.
        frame: Результат кадра.

    """
    painter.fillRect(rect, styles.BACKGROUND_COLOR)
    margin = styles.MARGIN_PX
    plot = PlotFrame(rect.adjusted(margin, margin // 2, -margin // 2, -margin))
    _paint_axes(painter, plot)
    _paint_points(painter, plot, frame)
    _paint_detections(painter, plot, frame)
    _paint_trajectory(painter, plot, frame)
    painter.setPen(styles.TEXT_COLOR)
    painter.drawText(
        QPointF(margin, margin // 2 - 4), f"frame {frame.report.frame}, s = {frame.pose.s:.2f} m"
    )


def render_frame_svg(
    frame: FrameResult,
    out_dir: Path,
    width: int = PLOT_WIDTH_PX,
    height: int = PLOT_HEIGHT_PX,
) -> Path:
    """Записать SVG кадра в каталог.

    Args:
        frame: Результат кадра.
        out_dir: Каталог вывода.
        width: Ширина в пикселях.
        height: Высота в пикселях.

    Returns:
        Путь к файлу frame_<n>.svg.

    Raises:
        PlotError: Если файл не удалось записать.

    """
    ensure_gui_app()
    buffer = QBuffer()
    buffer.open(QIODevice.OpenModeFlag.WriteOnly)

    generator = QSvgGenerator()
    generator.setOutputDevice(buffer)
    generator.setSize(QSize(width, height))
    generator.setViewBox(QRect(0, 0, width, height))
    generator.setTitle(f"frame {frame.report.frame}")

    painter = QPainter()
    try:
        if not painter.begin(generator):
            raise PlotError("cannot start painting into SVG generator")
        paint_frame(painter, QRect(0, 0, width, height), frame)
    finally:
        if painter.isActive():
            painter.end()
        svg = bytes(buffer.data().data())
        buffer.close()

    path = out_dir / Files.FRAME_SVG_TEMPLATE.format(index=frame.report.frame)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        path.write_bytes(svg)
    except OSError as e:
        raise PlotError(f"cannot write {path}: {e}") from e
    logger.debug(f"График кадра {frame.report.frame} записан в {path}")
    return path


def emit_plots(frames: tuple[FrameResult, ...], out_dir: Path) -> list[Path]:
    """Записать SVG для каждого кадра.

    Raises:
        PlotError: Если кадров нет или файл не удалось записать.

    """
    if not frames:
        raise PlotError("no frames to plot")
    return [render_frame_svg(frame, out_dir) for frame in frames]
