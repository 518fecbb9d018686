"""Тесты оркестратора прогона."""

from pathlib import Path

from PySide6.QtWidgets import QApplication
from src.app import App, ExitCode
from src.constants.path import Directories, Files
from src.services.scenario import builtin_scenario


class TestApp:
    """Тесты класса App."""

    def test_run_writes_reports(self, tmp_path: Path) -> None:
        """Успешный прогон возвращает 0 и пишет отчёты."""
        code = App(builtin_scenario("fig3_simple"), out_dir=tmp_path).run()

        assert code == ExitCode.OK
        assert (tmp_path / Files.REPORT_JSON).is_file()
        assert (tmp_path / Files.POINTS_CSV).is_file()

    def test_default_out_dir(self) -> None:
        """По умолчанию вывод идёт в OUTPUT_DIR/<сценарий>."""
        app = App(builtin_scenario("fig3_simple"))

        assert app.out_dir == Directories.OUTPUT_DIR / "fig3_simple"

    def test_frame_errors(self, tmp_path: Path) -> None:
        """Ошибки в кадрах дают код 1, отчёты всё равно пишутся."""
        code = App(builtin_scenario("empty_road"), out_dir=tmp_path).run()

        assert code == ExitCode.FRAME_ERRORS
        assert (tmp_path / Files.REPORT_JSON).is_file()

    def test_output_error(self, tmp_path: Path) -> None:
        """Незаписываемый каталог вывода даёт код 3."""
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")

        code = App(builtin_scenario("fig3_simple"), out_dir=blocker).run()

        assert code == ExitCode.OUTPUT_ERROR

    def test_plots(self, qapp: QApplication, tmp_path: Path) -> None:
        """С plots=True пишутся SVG для выбранных кадров."""
        code = App(
            builtin_scenario("straight_3lane"), out_dir=tmp_path, plots=True, frames=range(1)
        ).run()

        assert code == ExitCode.OK
        assert (tmp_path / "frame_0.svg").is_file()
        assert not (tmp_path / "frame_1.svg").exists()
