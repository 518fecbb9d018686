"""Base class for lane detectors."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.aldm.types import TracedLine
from src.services.line_sensor import SensorCloud


@dataclass(frozen=True)
class DetectionOutcome:
    """Result of one detector on one frame.

    `lines` hold every point the detector used, `transmitted` hold what it
    hands over to the trajectory stage.
    """

    detector: DetectorName
    lines: dict[LineRole, TracedLine] = field(default_factory=dict)
    transmitted: dict[LineRole, TracedLine] = field(default_factory=dict)
    seed_failures: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    error: str | None = None

    @property
    def has_ego_pair(self) -> bool:
        """Both guiding lines of the current lane were found."""
        return LineRole.EGO_LEFT in self.lines and LineRole.EGO_RIGHT in self.lines


class BaseDetector(ABC):
    """Base class for lane detectors."""

    name: DetectorName

    @abstractmethod
    def detect(self, cloud: SensorCloud) -> DetectionOutcome:
        """Detect guiding lines in one sensor frame."""
