"""ALDM: поиск полос по общему пулу точек."""

from src.services.aldm.fit import fit_linear, fit_quadratic
from src.services.aldm.lanes import detect_lanes
from src.services.aldm.tracer import downsample, pool_points, select_seeds, trace_line
from src.services.aldm.types import (
    AldmParams,
    LaneSet,
    PointPool,
    Provenance,
    QuadCoeffs,
    Seeds,
    TracedLine,
)

__all__ = [
    "AldmParams",
    "LaneSet",
    "PointPool",
    "Provenance",
    "QuadCoeffs",
    "Seeds",
    "TracedLine",
    "detect_lanes",
    "downsample",
    "fit_linear",
    "fit_quadratic",
    "pool_points",
    "select_seeds",
    "trace_line",
]
