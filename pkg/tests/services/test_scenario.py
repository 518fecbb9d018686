"""Тесты прогона сценариев."""

import pytest
from src.schemas.lane import LineRole
from src.schemas.settings import DetectorName
from src.services.errors import ScenarioConfigError
from src.services.road_model import EgoPose, RoadSpec, Straight
from src.services.scenario import (
    EgoPath,
    Scenario,
    ScenarioRun,
    builtin_scenario,
    list_scenarios,
    run_scenario,
)


class TestEgoPath:
    """Тесты равномерного пути."""

    def test_poses(self) -> None:
        """Позы идут от start с шагом step."""
        poses = EgoPath(start=10.0, step=2.5, count=3, lane=1).poses()

        assert [pose.s for pose in poses] == [10.0, 12.5, 15.0]
        assert {pose.lane for pose in poses} == {1}


class TestScenarioValidate:
    """Тесты проверки сценария."""

    @pytest.fixture
    def road(self) -> RoadSpec:
        """Однополосная прямая."""
        return RoadSpec(segments=(Straight(100.0),))

    def test_no_poses(self, road: RoadSpec) -> None:
        """Сценарий без поз некорректен."""
        with pytest.raises(ScenarioConfigError):
            Scenario(name="empty", road=road, poses=()).validate()

    def test_lane_out_of_range(self, road: RoadSpec) -> None:
        """Поза на несуществующей полосе некорректна."""
        with pytest.raises(ScenarioConfigError, match="lane 1"):
            Scenario(name="bad", road=road, poses=(EgoPose(s=10.0, lane=1),)).validate()

    def test_road_error_wrapped(self) -> None:
        """Ошибка описания дороги превращается в ошибку конфигурации."""
        road = RoadSpec(segments=(Straight(-1.0),))

        with pytest.raises(ScenarioConfigError):
            Scenario(name="bad", road=road, poses=(EgoPose(s=0.0),)).validate()


class TestBuiltinScenarios:
    """Тесты встроенных сценариев."""

    def test_list_sorted(self) -> None:
        """Имена перечисляются по алфавиту."""
        names = list_scenarios()

        assert names == sorted(names)
        assert {"worst_case", "straight_3lane", "fig3_simple", "empty_road"} <= set(names)

    def test_unknown_name(self) -> None:
        """Неизвестное имя даёт ScenarioConfigError."""
        with pytest.raises(ScenarioConfigError, match="unknown scenario"):
            builtin_scenario("nope")

    @pytest.mark.parametrize("name", list_scenarios())
    def test_builtin_is_valid(self, name: str) -> None:
        """Все встроенные сценарии проходят проверку."""
        builtin_scenario(name).validate()


class TestWorstCase:
    """Худший случай: правая кривая, эго у левого края полосы."""

    def test_aldm_purity(self, worst_case_run: ScenarioRun) -> None:
        """ALDM находит обе границы без чужих точек."""
        for report in worst_case_run.reports:
            score = report.scores[DetectorName.ALDM]

            assert score.ego_purity == 1.0
            assert score.ego_preview is not None
            assert score.ego_preview >= 60.0

    def test_baseline_loses_left_line(self, worst_case_run: ScenarioRun) -> None:
        """У базового детектора левая граница короче требуемой дальности."""
        for report in worst_case_run.reports:
            score = report.scores[DetectorName.BASELINE]

            assert score.preview[LineRole.EGO_LEFT] <= 8.0
            assert score.warnings

    def test_aldm_trajectory_close_to_truth(self, worst_case_run: ScenarioRun) -> None:
        """Траектория ALDM близка к эталонной осевой."""
        for report in worst_case_run.reports:
            error = report.scores[DetectorName.ALDM].trajectory_max_error

            assert error is not None
            assert error <= 0.5

    def test_no_frame_errors(self, worst_case_run: ScenarioRun) -> None:
        """Обе границы найдены в каждом кадре."""
        assert not worst_case_run.has_frame_errors
        assert len(worst_case_run.frames) == 5


class TestRunScenario:
    """Тесты прогона."""

    def test_three_lanes(self, straight_3lane_run: ScenarioRun) -> None:
        """На трёх полосах ALDM передаёт четыре линии по 13 точек."""
        for report in straight_3lane_run.reports:
            score = report.scores[DetectorName.ALDM]

            assert len(score.points) == 4
            assert set(score.points.values()) == {13}
            assert set(score.purity.values()) == {1.0}

    def test_empty_road_reports_errors(self) -> None:
        """Без разметки каждый кадр содержит ошибку, прогон не прерывается."""
        run = run_scenario(builtin_scenario("empty_road"))

        assert run.has_frame_errors
        assert all(report.errors for report in run.reports)
        assert len(run.frames) == 3

    def test_frame_subset(self) -> None:
        """Можно прогнать часть кадров."""
        run = run_scenario(builtin_scenario("straight_3lane"), frames=range(1, 3))

        assert [report.frame for report in run.reports] == [1, 2]

    def test_frames_beyond_path_skipped(self) -> None:
        """Индексы за пределами пути пропускаются."""
        run = run_scenario(builtin_scenario("straight_3lane"), frames=range(2, 10))

        assert [report.frame for report in run.reports] == [2]

    def test_frames_past_path_rejected(self) -> None:
        """Диапазон целиком за концом пути даёт ScenarioConfigError."""
        with pytest.raises(ScenarioConfigError, match="frames"):
            run_scenario(builtin_scenario("straight_3lane"), frames=range(5, 8))

    def test_workers_do_not_change_results(self, straight_3lane_run: ScenarioRun) -> None:
        """Параллельный прогон даёт те же отчёты в том же порядке."""
        parallel = run_scenario(builtin_scenario("straight_3lane"), workers=3)

        assert parallel.reports == straight_3lane_run.reports

    def test_summary(self, straight_3lane_run: ScenarioRun) -> None:
        """Сводка содержит min/mean/max для каждой метрики."""
        summary = straight_3lane_run.summary()

        purity = summary["aldm"]["ego_purity"]
        assert purity == {"min": 1.0, "mean": 1.0, "max": 1.0}
        assert set(summary) == {"baseline", "aldm"}

    def test_summary_missing_metric(self) -> None:
        """Метрика без значений в сводке равна None."""
        run = run_scenario(builtin_scenario("empty_road"))

        assert run.summary()["aldm"]["trajectory_max_error_m"] is None
