"""Tags shared by the sensor, the detectors and the reports."""

from enum import IntEnum, StrEnum


class MarkingType(IntEnum):
    """Marking type codes as reported by the line sensor."""

    NONE = 0
    CONTINUOUS = 1
    DASHED = 2
    DOTTED = 3


class Side(StrEnum):
    """Side tag assigned by the sensor."""

    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Side":
        """Return the other side."""
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class LineRole(StrEnum):
    """Role of a detected line relative to the ego lane."""

    EGO_LEFT = "ego_left"
    EGO_RIGHT = "ego_right"
    ADJACENT_LEFT = "adjacent_left"
    ADJACENT_RIGHT = "adjacent_right"

    def expected_boundary(self, ego_lane: int) -> int:
        """Boundary index this role should trace for an ego vehicle on `ego_lane`."""
        offsets = {
            LineRole.EGO_LEFT: 1,
            LineRole.EGO_RIGHT: 0,
            LineRole.ADJACENT_LEFT: 2,
            LineRole.ADJACENT_RIGHT: -1,
        }
        return ego_lane + offsets[self]
