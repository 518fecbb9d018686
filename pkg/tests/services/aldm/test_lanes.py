"""Тесты поиска полос и детектора ALDM."""

from collections.abc import Callable

import numpy as np
import pytest
from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.aldm.detector import AldmDetector
from src.services.aldm.lanes import detect_lanes
from src.services.aldm.types import LaneSet, TracedLine
from src.services.baseline_detector import detect_baseline
from src.services.errors import LaneDetectionError
from src.services.line_sensor import SensorCloud, SensorConfig, sense
from src.services.road_model import (
    Arc,
    Continuous,
    Dashed,
    EgoPose,
    MarkingSpec,
    RoadGeometry,
    RoadSpec,
    Straight,
    build_road,
)
from src.services.scenario import Scenario, builtin_scenario

type CloudFactory = Callable[..., SensorCloud]
type Frames = list[tuple[EgoPose, SensorCloud]]


def _clouds(scenario: Scenario) -> Frames:
    geom = build_road(scenario.road)
    return [(pose, sense(geom, pose, scenario.sensor)) for pose in scenario.poses]


def _lines_or_error(cloud: SensorCloud) -> dict[LineRole, TracedLine] | type[Exception]:
    try:
        return detect_lanes(cloud).lines
    except LaneDetectionError as e:
        return type(e)


def _random_road(rng: np.random.Generator) -> tuple[RoadGeometry, EgoPose]:
    lane_count = int(rng.integers(1, 4))
    markings: list[MarkingSpec] = [Continuous()]
    for _ in range(lane_count - 1):
        markings.append(Dashed(phase=float(rng.uniform(0.0, 18.0))))
    outer = Continuous() if rng.random() < 0.5 else Dashed(phase=float(rng.uniform(0.0, 18.0)))
    markings.append(outer)
    sweep = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 0.3))
    spec = RoadSpec(
        segments=(
            Straight(float(rng.uniform(20.0, 80.0))),
            Arc(float(rng.uniform(500.0, 1500.0)), sweep),
        ),
        lane_count=lane_count,
        boundary_markings=tuple(markings),
    )
    ego = EgoPose(
        s=float(rng.uniform(0.0, 20.0)),
        lateral_offset=float(rng.uniform(-0.5, 0.5)),
        lane=int(rng.integers(0, lane_count)),
    )
    return build_road(spec), ego


class TestDetectLanes:
    """Тесты detect_lanes."""

    @pytest.fixture
    def three_lanes(self) -> Frames:
        """Кадры прямой трёхполосной дороги."""
        return _clouds(builtin_scenario("straight_3lane"))

    def test_four_lines_on_three_lanes(self, three_lanes: Frames) -> None:
        """На средней полосе находятся все четыре границы без примесей."""
        for pose, cloud in three_lanes:
            lanes = detect_lanes(cloud)

            assert len(lanes.lines) == 4
            for role, line in lanes.lines.items():
                assert line.purity(role.expected_boundary(pose.lane)) == 1.0
            assert lanes.is_ordered()

    def test_points_consumed_once(self, three_lanes: Frames) -> None:
        """Одна точка пула принадлежит не более чем одной линии."""
        for _, cloud in three_lanes:
            indices = [i for line in detect_lanes(cloud).lines.values() for i in line.pool_indices]

            assert len(indices) == len(set(indices))

    def test_single_lane_has_no_adjacent(self, straight_road: RoadGeometry) -> None:
        """На однополосной дороге соседних полос нет."""
        lanes = detect_lanes(sense(straight_road, EgoPose(s=10.0), SensorConfig()))

        assert lanes.adjacent_left is None
        assert lanes.adjacent_right is None
        assert set(lanes.lines) == {LineRole.EGO_LEFT, LineRole.EGO_RIGHT}

    def test_empty_cloud_raises(self, make_cloud: CloudFactory) -> None:
        """Без точек граница текущей полосы не находится."""
        with pytest.raises(LaneDetectionError):
            detect_lanes(make_cloud())

    def test_missing_right_side_raises(self, make_cloud: CloudFactory) -> None:
        """Без правой границы детектор сообщает об ошибке."""
        with pytest.raises(LaneDetectionError):
            detect_lanes(make_cloud([(5.52 + 2 * k, 1.875) for k in range(20)]))

    def test_independent_of_side_tags(self) -> None:
        """Результат не зависит от меток сторон датчика."""
        rng = np.random.default_rng(2024)
        for _ in range(20):
            geom, ego = _random_road(rng)
            cloud = sense(geom, ego, SensorConfig())

            assert _lines_or_error(cloud) == _lines_or_error(cloud.inverted())

    def test_merged_lines_match_baseline(self) -> None:
        """Если каждая граница является одним объектом, ALDM совпадает с базовым детектором."""
        for _, cloud in _clouds(builtin_scenario("fig3_simple")):
            lanes: LaneSet = detect_lanes(cloud)
            baseline = detect_baseline(cloud)

            assert baseline.left is not None
            assert baseline.right is not None
            assert lanes.ego_left.points == baseline.left.points
            assert lanes.ego_right.points == baseline.right.points


class TestAldmDetector:
    """Тесты детектора ALDM."""

    def test_transmits_thirteen_points(self, straight_road: RoadGeometry) -> None:
        """В траекторию передаётся по 13 точек на линию."""
        outcome = AldmDetector().detect(sense(straight_road, EgoPose(s=10.0), SensorConfig()))

        assert outcome.detector is DetectorName.ALDM
        assert outcome.error is None
        assert outcome.has_ego_pair
        assert {len(line.points) for line in outcome.transmitted.values()} == {13}
        assert {len(line.points) for line in outcome.lines.values()} == {100}
        assert len(outcome.seed_failures) == 2

    def test_error_instead_of_exception(self, make_cloud: CloudFactory) -> None:
        """Ошибка поиска попадает в результат, а не прерывает прогон."""
        outcome = AldmDetector().detect(make_cloud())

        assert outcome.error is not None
        assert not outcome.has_ego_pair
        assert outcome.lines == {}
