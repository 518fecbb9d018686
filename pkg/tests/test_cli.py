"""Тесты командной строки."""

from collections.abc import Iterator
from pathlib import Path

import pytest
from loguru import logger
from src.app import ExitCode
from src.cli import main
from src.constants.path import Directories, Files


@pytest.fixture(autouse=True)
def isolated_dirs(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[Path]:
    """Перенаправить логи и результаты во временный каталог."""
    monkeypatch.setattr(Directories, "LOGS_DIR", tmp_path / "logs")
    monkeypatch.setattr(Directories, "OUTPUT_DIR", tmp_path / "runs")
    monkeypatch.setattr(Files, "LOG_PATH", tmp_path / "logs" / "log.log")
    yield tmp_path
    logger.remove()


class TestCli:
    """Тесты функции main."""

    def test_list_scenarios(self, capsys: pytest.CaptureFixture[str]) -> None:
        """list-scenarios печатает имена встроенных сценариев."""
        code = main(["list-scenarios"])

        assert code == ExitCode.OK
        names = capsys.readouterr().out.split()
        assert "worst_case" in names
        assert names == sorted(names)

    def test_run_builtin(self, tmp_path: Path) -> None:
        """run-builtin пишет отчёты в каталог --out."""
        code = main(["run-builtin", "straight_3lane", "--out", str(tmp_path / "out")])

        assert code == ExitCode.OK
        assert (tmp_path / "out" / Files.REPORT_JSON).is_file()
        assert (tmp_path / "logs" / "log.log").is_file()

    def test_default_output_dir(self, tmp_path: Path) -> None:
        """Без --out отчёты пишутся в runs/<сценарий>."""
        code = main(["run-builtin", "fig3_simple"])

        assert code == ExitCode.OK
        assert (tmp_path / "runs" / "fig3_simple" / Files.REPORT_JSON).is_file()

    def test_run_config(self, tmp_path: Path) -> None:
        """run читает сценарий из TOML."""
        code = main(
            [
                "run",
                str(Directories.SCENARIOS_DIR / "right_curve.toml"),
                "--out",
                str(tmp_path / "out"),
                "--frames",
                "0..1",
            ]
        )

        assert code in (ExitCode.OK, ExitCode.FRAME_ERRORS)
        assert (tmp_path / "out" / Files.TRACED_CSV).is_file()

    def test_frame_errors(self, tmp_path: Path) -> None:
        """Сценарий без разметки даёт код 1."""
        assert main(["run-builtin", "empty_road", "--out", str(tmp_path)]) == ExitCode.FRAME_ERRORS

    def test_bad_config(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Ошибка конфигурации даёт код 2 и сообщение в stderr."""
        config = tmp_path / "bad.toml"
        config.write_text("[road]\nlane_count = 0\n", encoding="utf-8")

        code = main(["run", str(config)])

        assert code == ExitCode.CONFIG_ERROR
        assert "error:" in capsys.readouterr().err

    def test_unknown_builtin(self) -> None:
        """Неизвестный встроенный сценарий даёт код 2."""
        assert main(["run-builtin", "nope"]) == ExitCode.CONFIG_ERROR

    def test_workers_must_be_positive(self) -> None:
        """--workers 0 отклоняется."""
        assert main(["run-builtin", "fig3_simple", "--workers", "0"]) == ExitCode.CONFIG_ERROR

    def test_frames_past_path(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Диапазон кадров за концом пути даёт код 2 без записи отчётов."""
        out = tmp_path / "out"

        code = main(["run-builtin", "fig3_simple", "--frames", "50..60", "--out", str(out)])

        assert code == ExitCode.CONFIG_ERROR
        assert "--frames 50..60" in capsys.readouterr().err
        assert not out.exists()

    def test_bad_frame_range(self) -> None:
        """Некорректный --frames завершает разбор аргументов с кодом 2."""
        with pytest.raises(SystemExit) as exc_info:
            main(["run-builtin", "fig3_simple", "--frames", "3..1"])

        assert exc_info.value.code == 2
