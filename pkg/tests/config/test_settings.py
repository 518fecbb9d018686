"""Тесты загрузки сценария из TOML."""

import re
from pathlib import Path

import pytest
from src.config.settings import ScenarioSettings, load_scenario
from src.constants.path import Directories
from src.schemas.settings import DetectorName
from src.services.errors import ScenarioConfigError
from src.services.road_model import Arc, Continuous, Dashed, Dotted, Straight

BASE = """
name = "curve"

[road]
lane_count = 1
design_speed = 110

[[road.segments]]
kind = "straight"
length = 50

[[road.segments]]
kind = "arc"
radius = 500
sweep = -0.5

[[road.markings]]
kind = "continuous"

[[road.markings]]
kind = "dashed"
phase = 3

[ego]
start = 50
step = 2
count = 3
lateral_offset = 0.925
"""


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "scenario.toml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadScenario:
    """Тесты чтения конфигурации."""

    def test_full_config(self, tmp_path: Path) -> None:
        """Все секции переносятся в сценарий."""
        text = BASE + '\n[sensor]\nld_range = 150\nmerge_fragments = true\n\n[aldm]\nmax_gap = 20\n'

        scenario = load_scenario(_write(tmp_path, text))

        assert scenario.name == "curve"
        assert scenario.road.segments == (Straight(50.0), Arc(500.0, -0.5))
        assert scenario.road.markings == (Continuous(), Dashed(phase=3.0))
        assert scenario.road.design_speed == 110.0
        assert [pose.s for pose in scenario.poses] == [50.0, 52.0, 54.0]
        assert scenario.poses[0].lateral_offset == pytest.approx(0.925)
        assert scenario.sensor.ld_range == 150.0
        assert scenario.sensor.merge_fragments is True
        assert scenario.aldm.max_gap == 20.0
        assert scenario.detectors == (DetectorName.BASELINE, DetectorName.ALDM)

    def test_name_from_file_stem(self, tmp_path: Path) -> None:
        """Без name имя берётся из имени файла."""
        scenario = load_scenario(_write(tmp_path, BASE.replace('name = "curve"', "")))

        assert scenario.name == "scenario"

    def test_explicit_poses(self, tmp_path: Path) -> None:
        """Позы можно перечислить в [[ego.poses]]."""
        text = BASE.split("[ego]")[0] + (
            "[[ego.poses]]\ns = 60\n\n[[ego.poses]]\ns = 70\nheading_offset = 0.01\n"
        )

        scenario = load_scenario(_write(tmp_path, text))

        assert [pose.s for pose in scenario.poses] == [60.0, 70.0]
        assert scenario.poses[1].heading_offset == pytest.approx(0.01)

    def test_dotted_marking(self, tmp_path: Path) -> None:
        """Пунктир читается со своим шаблоном по умолчанию."""
        text = BASE.replace('kind = "dashed"', 'kind = "dotted"')

        scenario = load_scenario(_write(tmp_path, text))

        assert scenario.road.markings[1] == Dotted(phase=3.0)

    def test_detector_subset(self, tmp_path: Path) -> None:
        """Список детекторов можно сократить."""
        scenario = load_scenario(_write(tmp_path, 'detectors = ["aldm"]\n' + BASE))

        assert scenario.detectors == (DetectorName.ALDM,)

    def test_unknown_key_warns(self, tmp_path: Path, log_messages: list[str]) -> None:
        """Неизвестный ключ пропускается с предупреждением."""
        load_scenario(_write(tmp_path, BASE + "\n[sensor]\nrange = 10\n"))

        assert any("sensor.range" in message for message in log_messages)

    @pytest.mark.parametrize("name", ["right_curve", "three_lanes", "dotted_noise"])
    def test_bundled_scenarios(self, name: str) -> None:
        """Примеры из scenarios/ загружаются без ошибок."""
        scenario = load_scenario(Directories.SCENARIOS_DIR / f"{name}.toml")

        assert scenario.name == name


class TestConfigErrors:
    """Тесты ошибок конфигурации."""

    @pytest.mark.parametrize(
        ("old", "new", "path"),
        [
            ('kind = "arc"', 'kind = "spiral"', "road.segments[1].kind"),
            ('kind = "dashed"', 'kind = "zigzag"', "road.markings[1].kind"),
            ("radius = 500", 'radius = "big"', "road.segments[1].radius"),
            ("lane_count = 1", "lane_count = 1.5", "road.lane_count"),
            ("count = 3", "count = 0", "ego.count"),
            ("start = 50", "", "ego.start"),
        ],
    )
    def test_error_names_key(self, tmp_path: Path, old: str, new: str, path: str) -> None:
        """Сообщение об ошибке содержит путь до ключа."""
        with pytest.raises(ScenarioConfigError, match=re.escape(path)):
            load_scenario(_write(tmp_path, BASE.replace(old, new)))

    def test_missing_road(self, tmp_path: Path) -> None:
        """Секция [road] обязательна."""
        with pytest.raises(ScenarioConfigError, match="road"):
            load_scenario(_write(tmp_path, BASE.split("[road]")[0] + "[ego]\nstart = 1\n"))

    def test_invalid_road_rejected(self, tmp_path: Path) -> None:
        """Фаза вне периода отклоняется при проверке сценария."""
        with pytest.raises(ScenarioConfigError, match="phase"):
            load_scenario(_write(tmp_path, BASE.replace("phase = 3", "phase = 30")))

    def test_bool_expected(self, tmp_path: Path) -> None:
        """Флаг должен быть true или false."""
        with pytest.raises(ScenarioConfigError, match="sensor.merge_fragments"):
            load_scenario(_write(tmp_path, BASE + "\n[sensor]\nmerge_fragments = 1\n"))

    def test_unknown_detector(self, tmp_path: Path) -> None:
        """Неизвестный детектор отклоняется."""
        with pytest.raises(ScenarioConfigError, match="detectors"):
            load_scenario(_write(tmp_path, 'detectors = ["magic"]\n' + BASE))

    def test_missing_file(self, tmp_path: Path) -> None:
        """Отсутствующий файл даёт ScenarioConfigError."""
        with pytest.raises(ScenarioConfigError, match="cannot read"):
            load_scenario(tmp_path / "missing.toml")

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Синтаксическая ошибка TOML даёт ScenarioConfigError."""
        with pytest.raises(ScenarioConfigError):
            load_scenario(_write(tmp_path, "[road\n"))

    def test_settings_from_mapping(self) -> None:
        """Настройки можно собрать из уже разобранного словаря."""
        settings = ScenarioSettings({"road": {"segments": [{"kind": "straight", "length": 10}]}})

        assert settings.road().segments == (Straight(10.0),)
        assert settings.name == "scenario"
