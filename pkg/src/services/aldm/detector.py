"""Детектор ALDM для сценарного прогона."""

from loguru import logger

from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.aldm.lanes import detect_lanes
from src.services.aldm.tracer import downsample
from src.services.aldm.types import AldmParams
from src.services.detector import BaseDetector, DetectionOutcome
from src.services.errors import LaneDetectionError
from src.services.line_sensor import SensorCloud


class AldmDetector(BaseDetector):
    """Пул точек, трассировка, output_points точек на линию."""

    name = DetectorName.ALDM

    def __init__(self, params: AldmParams | None = None) -> None:
        """Initialize the detector.

        Args:
            params: Параметры ALDM.

        """
        self.params = params or AldmParams()

    def detect(self, cloud: SensorCloud) -> DetectionOutcome:
        """Найти полосы и прорядить каждую линию."""
        try:
            lanes = detect_lanes(cloud, self.params)
        except LaneDetectionError as e:
            logger.warning(f"ALDM: {e}")
            return DetectionOutcome(detector=self.name, seed_failures=(str(e),), error=str(e))

        lines = lanes.lines
        failures = tuple(
            f"{role}: no seed points"
            for role in (LineRole.ADJACENT_LEFT, LineRole.ADJACENT_RIGHT)
            if role not in lines
        )
        warnings = tuple(w for line in lines.values() for w in line.warnings)
        if not lanes.is_ordered():
            warnings += ("ego boundaries cross",)
        return DetectionOutcome(
            detector=self.name,
            lines=lines,
            transmitted={
                role: downsample(line, self.params.output_points) for role, line in lines.items()
            },
            seed_failures=failures,
            warnings=warnings,
        )
