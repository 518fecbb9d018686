"""Pytest configuration and fixtures."""

from collections.abc import Callable, Iterator, Sequence

import pytest
from loguru import logger
from src.schemas.lane import MarkingType, Side
from src.services.line_sensor import LineObject, SensorCloud, SensorConfig, side_of
from src.services.road_model import PointXY, RoadGeometry, RoadSpec, Straight, build_road
from src.services.scenario import ScenarioRun, builtin_scenario, run_scenario

type CloudFactory = Callable[..., SensorCloud]


@pytest.fixture
def log_messages() -> Iterator[list[str]]:
    """Собрать сообщения loguru уровня WARNING и выше."""
    messages: list[str] = []
    handler_id = logger.add(lambda m: messages.append(m.record["message"]), level="WARNING")
    yield messages
    logger.remove(handler_id)


@pytest.fixture
def straight_road() -> RoadGeometry:
    """Прямая однополосная дорога 300 м со сплошными границами."""
    return build_road(RoadSpec(segments=(Straight(300.0),)))


@pytest.fixture
def make_cloud() -> CloudFactory:
    """Фабрика кадров датчика из списков точек (x, y).

    Каждый список становится объектом; сторона по первой точке,
    truth_label по порядку, если не задан явно.
    """

    def factory(
        *lines: Sequence[tuple[float, float]],
        labels: Sequence[int] | None = None,
        config: SensorConfig | None = None,
    ) -> SensorCloud:
        left: list[LineObject] = []
        right: list[LineObject] = []
        for line_id, coords in enumerate(lines):
            points = tuple(PointXY(x, y) for x, y in coords)
            label = labels[line_id] if labels is not None else line_id
            side = side_of(points[0])
            obj = LineObject(line_id, label, MarkingType.CONTINUOUS, side, points)
            (left if side is Side.LEFT else right).append(obj)
        return SensorCloud(
            timestamp=0.0, left=tuple(left), right=tuple(right), config=config or SensorConfig()
        )

    return factory


@pytest.fixture(scope="session")
def worst_case_run() -> ScenarioRun:
    """Прогон худшего случая: правая кривая R = 500 м, эго у левого края."""
    return run_scenario(builtin_scenario("worst_case"))


@pytest.fixture(scope="session")
def straight_3lane_run() -> ScenarioRun:
    """Прогон прямой трёхполосной дороги."""
    return run_scenario(builtin_scenario("straight_3lane"))
