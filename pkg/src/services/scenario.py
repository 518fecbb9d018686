"""Прогон сценария: поза за позой датчик, детекторы, оценка по эталону."""

import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from loguru import logger

from src.constants.settings import DEFAULT_FRAME_WORKERS
from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.aldm.detector import AldmDetector
from src.services.aldm.types import AldmParams
from src.services.baseline_detector import BaselineDetector
from src.services.detector import BaseDetector, DetectionOutcome
from src.services.errors import DegenerateInputError, FrameError, RoadSpecError, ScenarioConfigError
from src.services.line_sensor import SensorCloud, SensorConfig, sense
from src.services.road_model import (
    Arc,
    CenterlineTruth,
    Continuous,
    Dashed,
    EgoPose,
    NoMarking,
    RoadGeometry,
    RoadSpec,
    Straight,
    build_road,
    ground_truth_centerline,
    leftmost_pose,
    phase_hiding_dash,
)
from src.services.trajectory import Trajectory, compute_trajectory
from src.utils.time import format_elapsed

EGO_ROLES = (LineRole.EGO_LEFT, LineRole.EGO_RIGHT)


@dataclass(frozen=True)
class EgoPath:
    """Равномерный проезд: count поз от start с шагом step по s."""

    start: float
    step: float
    count: int
    lane: int = 0
    lateral_offset: float = 0.0
    heading_offset: float = 0.0

    def poses(self) -> tuple[EgoPose, ...]:
        """Позы вдоль пути."""
        return tuple(
            EgoPose(
                s=self.start + k * self.step,
                lateral_offset=self.lateral_offset,
                heading_offset=self.heading_offset,
                lane=self.lane,
            )
            for k in range(self.count)
        )


@dataclass(frozen=True)
class Scenario:
    """Дорога, позы эго, параметры датчика и детекторов."""

    name: str
    road: RoadSpec
    poses: tuple[EgoPose, ...]
    sensor: SensorConfig = field(default_factory=SensorConfig)
    aldm: AldmParams = field(default_factory=AldmParams)
    detectors: tuple[DetectorName, ...] = (DetectorName.BASELINE, DetectorName.ALDM)

    @classmethod
    def along(
        cls,
        name: str,
        road: RoadSpec,
        path: EgoPath,
        sensor: SensorConfig | None = None,
        aldm: AldmParams | None = None,
    ) -> "Scenario":
        """Сценарий с равномерным путём."""
        return cls(
            name=name,
            road=road,
            poses=path.poses(),
            sensor=sensor or SensorConfig(),
            aldm=aldm or AldmParams(),
        )

    def validate(self) -> None:
        """Проверить все вложенные инварианты.

        Raises:
            ScenarioConfigError: Если сценарий некорректен.

        """
        if not self.poses:
            raise ScenarioConfigError(f"{self.name}: at least one ego pose is required")
        if not self.detectors:
            raise ScenarioConfigError(f"{self.name}: at least one detector is required")
        try:
            self.road.validate()
            self.sensor.validate()
            self.aldm.validate()
        except (RoadSpecError, ValueError) as e:
            raise ScenarioConfigError(f"{self.name}: {e}") from e
        for index, pose in enumerate(self.poses):
            if not 0 <= pose.lane < self.road.lane_count:
                raise ScenarioConfigError(
                    f"{self.name}: pose {index} on lane {pose.lane}, "
                    f"road has {self.road.lane_count} lane(s)"
                )


@dataclass(frozen=True)
class DetectorScore:
    """Оценка одного детектора на одном кадре."""

    detector: DetectorName
    purity: dict[LineRole, float]
    preview: dict[LineRole, float]
    points: dict[LineRole, int]
    truth_labels: dict[LineRole, tuple[int, ...]]
    trajectory_max_error: float | None = None
    trajectory_mean_error: float | None = None
    seed_failures: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ego_purity(self) -> float | None:
        """Худшая чистота по границам текущей полосы."""
        values = [self.purity[role] for role in EGO_ROLES if role in self.purity]
        return min(values) if values else None

    @property
    def ego_preview(self) -> float | None:
        """Наименьшая дальность по границам текущей полосы."""
        values = [self.preview[role] for role in EGO_ROLES if role in self.preview]
        return min(values) if values else None


@dataclass(frozen=True)
class FrameReport:
    """Результаты кадра по всем детекторам."""

    frame: int
    s: float
    scores: dict[DetectorName, DetectorScore]
    errors: tuple[str, ...] = ()


@dataclass(frozen=True)
class FrameResult:
    """Отчёт кадра и всё, из чего он посчитан (для CSV и графиков)."""

    report: FrameReport
    pose: EgoPose
    cloud: SensorCloud | None = None
    truth: CenterlineTruth | None = None
    outcomes: dict[DetectorName, DetectionOutcome] = field(default_factory=dict)
    trajectories: dict[DetectorName, Trajectory] = field(default_factory=dict)


SUMMARY_METRICS: dict[str, Callable[[DetectorScore], float | None]] = {
    "ego_purity": lambda score: score.ego_purity,
    "ego_preview_m": lambda score: score.ego_preview,
    "trajectory_max_error_m": lambda score: score.trajectory_max_error,
    "trajectory_mean_error_m": lambda score: score.trajectory_mean_error,
}


@dataclass(frozen=True)
class ScenarioRun:
    """Все обработанные кадры сценария в порядке индексов."""

    scenario: Scenario
    frames: tuple[FrameResult, ...]

    @property
    def reports(self) -> tuple[FrameReport, ...]:
        """Отчёты кадров."""
        return tuple(frame.report for frame in self.frames)

    @property
    def has_frame_errors(self) -> bool:
        """Был ли хотя бы один кадр с ошибкой."""
        return any(report.errors for report in self.reports)

    def summary(self) -> dict[str, dict[str, dict[str, float] | None]]:
        """Минимум, среднее и максимум каждой метрики по кадрам для каждого детектора."""
        result: dict[str, dict[str, dict[str, float] | None]] = {}
        for detector in self.scenario.detectors:
            per_metric: dict[str, dict[str, float] | None] = {}
            for metric, getter in SUMMARY_METRICS.items():
                values = [
                    value
                    for report in self.reports
                    if detector in report.scores
                    and (value := getter(report.scores[detector])) is not None
                ]
                per_metric[metric] = (
                    {"min": min(values), "mean": sum(values) / len(values), "max": max(values)}
                    if values
                    else None
                )
            result[str(detector)] = per_metric
        return result


def make_detector(name: DetectorName, scenario: Scenario) -> BaseDetector:
    """Создать детектор по имени."""
    if name is DetectorName.ALDM:
        return AldmDetector(scenario.aldm)
    return BaselineDetector(scenario.aldm.min_preview)


def _score(
    outcome: DetectionOutcome,
    pose: EgoPose,
    truth: CenterlineTruth,
    errors: list[str],
) -> tuple[DetectorScore, Trajectory | None]:
    """Оценить выход детектора и построить по нему траекторию."""
    lines = outcome.lines
    warnings = list(outcome.warnings)
    trajectory = None
    max_error = mean_error = None

    if outcome.error is not None:
        errors.append(f"{outcome.detector}: {outcome.error}")
    elif outcome.has_ego_pair:
        try:
            trajectory = compute_trajectory(
                outcome.transmitted[LineRole.EGO_LEFT], outcome.transmitted[LineRole.EGO_RIGHT]
            )
            max_error, mean_error = trajectory.error_against(truth)
        except (DegenerateInputError, FrameError) as e:
            message = f"{outcome.detector}: trajectory: {e}"
            if outcome.detector is DetectorName.ALDM:
                errors.append(message)
            else:
                warnings.append(message)
            logger.warning(message)

    score = DetectorScore(
        detector=outcome.detector,
        purity={
            role: line.purity(role.expected_boundary(pose.lane)) for role, line in lines.items()
        },
        preview={role: line.preview for role, line in lines.items()},
        points={role: len(line.points) for role, line in outcome.transmitted.items()},
        truth_labels={role: line.truth_labels for role, line in lines.items()},
        trajectory_max_error=max_error,
        trajectory_mean_error=mean_error,
        seed_failures=outcome.seed_failures,
        warnings=tuple(warnings),
    )
    return score, trajectory


def evaluate_frame(
    index: int,
    scenario: Scenario,
    geom: RoadGeometry,
    detectors: Iterable[BaseDetector],
) -> FrameResult:
    """Обработать один кадр: датчик, детекторы, оценка.

    Ошибки кадра не прерывают прогон, а попадают в отчёт.
    """
    started = time.perf_counter()
    pose = scenario.poses[index]
    errors: list[str] = []
    try:
        cloud = sense(geom, pose, scenario.sensor, timestamp=float(index))
        truth = ground_truth_centerline(geom, pose.lane, pose, scenario.sensor.fov_end)
    except RoadSpecError as e:
        logger.warning(f"Кадр {index}: {e}")
        report = FrameReport(frame=index, s=pose.s, scores={}, errors=(str(e),))
        return FrameResult(report=report, pose=pose)

    scores: dict[DetectorName, DetectorScore] = {}
    outcomes: dict[DetectorName, DetectionOutcome] = {}
    trajectories: dict[DetectorName, Trajectory] = {}
    for detector in detectors:
        outcome = detector.detect(cloud)
        score, trajectory = _score(outcome, pose, truth, errors)
        outcomes[detector.name] = outcome
        scores[detector.name] = score
        if trajectory is not None:
            trajectories[detector.name] = trajectory

    logger.debug(
        f"Кадр {index} (s={pose.s:.2f}): {cloud.point_count} точек, "
        f"{format_elapsed(time.perf_counter() - started)}"
    )
    return FrameResult(
        report=FrameReport(frame=index, s=pose.s, scores=scores, errors=tuple(errors)),
        pose=pose,
        cloud=cloud,
        truth=truth,
        outcomes=outcomes,
        trajectories=trajectories,
    )


def run_scenario(
    scenario: Scenario,
    workers: int = DEFAULT_FRAME_WORKERS,
    frames: range | None = None,
) -> ScenarioRun:
    """Прогнать сценарий.

    Args:
        scenario: Сценарий.
        workers: Число потоков для кадров; порядок результатов от него не зависит.
        frames: Подмножество индексов кадров.

    Returns:
        Результаты кадров по возрастанию индекса.

    Raises:
        ScenarioConfigError: Если сценарий некорректен или в `frames` нет ни одного кадра пути.

    """
    scenario.validate()
    try:
        geom = build_road(scenario.road)
    except RoadSpecError as e:
        raise ScenarioConfigError(f"{scenario.name}: {e}") from e

    indices = [i for i in (frames or range(len(scenario.poses))) if i < len(scenario.poses)]
    if not indices:
        raise ScenarioConfigError(
            f"{scenario.name}: frames {frames} outside 0..{len(scenario.poses) - 1}"
        )
    detectors = [make_detector(name, scenario) for name in scenario.detectors]
    logger.info(f"Сценарий {scenario.name}: {len(indices)} кадров, детекторы {scenario.detectors}")

    started = time.perf_counter()

    def job(index: int) -> FrameResult:
        return evaluate_frame(index, scenario, geom, detectors)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = tuple(pool.map(job, indices))
    else:
        results = tuple(map(job, indices))

    run = ScenarioRun(scenario=scenario, frames=results)
    failed = sum(1 for report in run.reports if report.errors)
    logger.info(
        f"Сценарий {scenario.name} готов за {format_elapsed(time.perf_counter() - started)}: "
        f"кадров с ошибками {failed} из {len(results)}"
    )
    return run


def worst_case() -> Scenario:
    """Правая кривая R = 500 м, эго у левого края полосы, худшая фаза штрихов слева."""
    near_offset = SensorConfig().near_offset
    draft = RoadSpec(
        segments=(Straight(50.0), Arc(500.0, -0.5)),
        lane_count=1,
        boundary_markings=(Continuous(), Dashed()),
        design_speed=110,
    )
    geom = build_road(draft)
    first = leftmost_pose(geom, lane=0, s=50.0)
    phase = phase_hiding_dash(geom, 1, first, near_offset, Dashed())
    road = replace(draft, boundary_markings=(Continuous(), Dashed(phase=phase)))
    poses = tuple(leftmost_pose(geom, lane=0, s=50.0 + 2.0 * k) for k in range(5))
    return Scenario(name="worst_case", road=road, poses=poses)


def straight_3lane() -> Scenario:
    """Прямая трёхполосная дорога, эго на средней полосе."""
    road = RoadSpec(
        segments=(Straight(400.0),),
        lane_count=3,
        boundary_markings=(Continuous(), Dashed(phase=15.0), Dashed(phase=15.0), Continuous()),
    )
    return Scenario.along("straight_3lane", road, EgoPath(start=10.48, step=2.0, count=3, lane=1))


def fig3_simple() -> Scenario:
    """Простая дорога, собранная в редакторе: одна линия на границу."""
    road = RoadSpec(
        segments=(Straight(300.0),),
        lane_count=1,
        boundary_markings=(Continuous(), Dashed(phase=15.0)),
    )
    return Scenario.along(
        "fig3_simple",
        road,
        EgoPath(start=10.48, step=2.0, count=3),
        sensor=SensorConfig(merge_fragments=True),
    )


def empty_road() -> Scenario:
    """Дорога без разметки."""
    road = RoadSpec(
        segments=(Straight(300.0),), lane_count=1, boundary_markings=(NoMarking(), NoMarking())
    )
    return Scenario.along("empty_road", road, EgoPath(start=10.0, step=4.0, count=3))


BUILTIN_SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "worst_case": worst_case,
    "straight_3lane": straight_3lane,
    "fig3_simple": fig3_simple,
    "empty_road": empty_road,
}


def list_scenarios() -> list[str]:
    """Имена встроенных сценариев."""
    return sorted(BUILTIN_SCENARIOS)


def builtin_scenario(name: str) -> Scenario:
    """Встроенный сценарий по имени.

    Raises:
        ScenarioConfigError: Если сценария нет.

    """
    try:
        factory = BUILTIN_SCENARIOS[name]
    except KeyError:
        raise ScenarioConfigError(
            f"unknown scenario {name!r}, available: {', '.join(list_scenarios())}"
        ) from None
    return factory()
