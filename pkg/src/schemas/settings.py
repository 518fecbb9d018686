"""Ключи секций и параметров конфигурации сценария."""

from enum import StrEnum


class Section(StrEnum):
    """Секции TOML-конфигурации сценария."""

    ROAD = "road"
    SEGMENTS = "segments"
    MARKINGS = "markings"
    EGO = "ego"
    POSES = "poses"
    SENSOR = "sensor"
    ALDM = "aldm"


class SegmentKind(StrEnum):
    """Типы сегментов дороги."""

    STRAIGHT = "straight"
    ARC = "arc"


class MarkingKind(StrEnum):
    """Типы разметки в конфигурации."""

    NONE = "none"
    CONTINUOUS = "continuous"
    DASHED = "dashed"
    DOTTED = "dotted"


class DetectorName(StrEnum):
    """Детекторы, которые умеет запускать харнесс."""

    BASELINE = "baseline"
    ALDM = "aldm"
