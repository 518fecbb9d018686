"""Базовый детектор: одна линия на сторону, как в штатном выходе датчика.

Берёт объект, ближайший к продольной оси автомобиля, и доверяет меткам
сторон датчика. На раздробленной разметке это даёт один штрих вместо линии.
"""

from dataclasses import dataclass

from loguru import logger

from src.constants.settings import DEFAULT_MIN_PREVIEW_M, LEGACY_POINT_LIST_SIZE
from src.schemas.lane import LineRole, Side
from src.schemas.settings import DetectorName
from src.services.aldm.types import TracedLine
from src.services.detector import BaseDetector, DetectionOutcome
from src.services.line_sensor import LineObject, SensorCloud
from src.services.road_model import PointXY


@dataclass(frozen=True)
class BaselineSelection:
    """Выбранные объекты слева и справа."""

    left: LineObject | None
    right: LineObject | None


def _nearest(objects: tuple[LineObject, ...]) -> LineObject | None:
    if not objects:
        return None
    return min(objects, key=lambda obj: (round(obj.min_abs_y, 9), obj.points[0].x, obj.id))


def detect_baseline(cloud: SensorCloud) -> BaselineSelection:
    """Выбрать по одному объекту на сторону с наименьшим min |y|.

    При равенстве выигрывает объект с меньшим x первой точки.
    """
    return BaselineSelection(left=_nearest(cloud.left), right=_nearest(cloud.right))


def legacy_point_list(obj: LineObject, size: int = LEGACY_POINT_LIST_SIZE) -> tuple[PointXY, ...]:
    """Первые `size` точек объекта, как в стандартном списке точек датчика."""
    return obj.points[:size]


class BaselineDetector(BaseDetector):
    """Детектор «одна линия на сторону»."""

    name = DetectorName.BASELINE

    def __init__(self, min_preview: float = DEFAULT_MIN_PREVIEW_M) -> None:
        """Initialize the detector.

        Args:
            min_preview: Дальность, короче которой линия помечается предупреждением.

        """
        self.min_preview = min_preview

    def detect(self, cloud: SensorCloud) -> DetectionOutcome:
        """Выбрать ближайшие объекты и оформить их как направляющие линии."""
        selection = detect_baseline(cloud)
        lines: dict[LineRole, TracedLine] = {}
        transmitted: dict[LineRole, TracedLine] = {}
        failures: list[str] = []
        warnings: list[str] = []

        for side, role, obj in (
            (Side.LEFT, LineRole.EGO_LEFT, selection.left),
            (Side.RIGHT, LineRole.EGO_RIGHT, selection.right),
        ):
            if obj is None:
                failures.append(f"{role}: no {side} line object")
                continue
            line = TracedLine.from_line_object(obj, role)
            lines[role] = line
            legacy = legacy_point_list(obj)
            transmitted[role] = TracedLine(
                role=role, points=legacy, provenance=line.provenance[: len(legacy)]
            )
            if line.preview < self.min_preview:
                warnings.append(f"{role}: preview {line.preview:.1f} m < {self.min_preview:.1f} m")

        error = None
        if failures:
            error = "; ".join(failures)
            logger.warning(f"Baseline: {error}")
        return DetectionOutcome(
            detector=self.name,
            lines=lines,
            transmitted=transmitted,
            seed_failures=tuple(failures),
            warnings=tuple(warnings),
            error=error,
        )
