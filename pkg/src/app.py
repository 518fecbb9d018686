"""Оркестратор прогона сценария."""

from pathlib import Path

from loguru import logger

from src.config import texts
from src.constants.path import Directories
from src.constants.settings import DEFAULT_FRAME_WORKERS
from src.services.errors import PlotError
from src.services.report import write_reports
from src.services.scenario import Scenario, ScenarioRun, run_scenario


class ExitCode:
    """Коды завершения командной строки."""

    OK = 0
    FRAME_ERRORS = 1
    CONFIG_ERROR = 2
    OUTPUT_ERROR = 3


class App:
    """Оркестратор прогона.

    Связывает сервисы: прогон кадров, отчёты, графики.
    Знает КОГДА вызывать методы, но не КАК они работают.
    """

    def __init__(
        self,
        scenario: Scenario,
        out_dir: Path | None = None,
        plots: bool = False,
        frames: range | None = None,
        workers: int = DEFAULT_FRAME_WORKERS,
    ) -> None:
        """Инициализировать прогон.

        Args:
            scenario: Проверенный сценарий.
            out_dir: Каталог вывода; по умолчанию app_data/runs/<имя сценария>.
            plots: Записывать ли SVG для каждого кадра.
            frames: Подмножество кадров.
            workers: Число потоков для кадров.

        """
        self.scenario = scenario
        self.out_dir = out_dir or Directories.OUTPUT_DIR / scenario.name
        self.plots = plots
        self.frames = frames
        self.workers = workers

    def run(self) -> int:
        """Прогнать сценарий и записать артефакты.

        Returns:
            0 если ошибок в кадрах нет, 1 если они были, 3 если не удалось записать вывод.

        """
        run = run_scenario(self.scenario, workers=self.workers, frames=self.frames)
        self._log_summary(run)
        try:
            write_reports(run, self.out_dir)
            if self.plots:
                self._emit_plots(run)
        except (OSError, PlotError) as e:
            logger.error(f"Вывод не записан: {e}")
            return ExitCode.OUTPUT_ERROR
        return ExitCode.FRAME_ERRORS if run.has_frame_errors else ExitCode.OK

    def _emit_plots(self, run: ScenarioRun) -> None:
        # Импорт здесь: Qt нужен только для графиков
        from src.widgets.frame_plot import emit_plots

        paths = emit_plots(run.frames, self.out_dir)
        logger.info(f"Записано графиков: {len(paths)}")

    def _log_summary(self, run: ScenarioRun) -> None:
        failed = sum(1 for report in run.reports if report.errors)
        logger.info(
            texts.Summary.HEADER.format(
                name=run.scenario.name, frames=len(run.frames), failed=failed
            )
        )
        for detector, metrics in run.summary().items():
            for metric, stats in metrics.items():
                if stats is None:
                    line = texts.Summary.METRIC_MISSING.format(detector=detector, metric=metric)
                    logger.info(line)
                else:
                    line = texts.Summary.METRIC.format(detector=detector, metric=metric, **stats)
                    logger.info(line)
        logger.info(texts.Summary.OUTPUT.format(path=self.out_dir))
