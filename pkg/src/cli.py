"""Командная строка: run, run-builtin, list-scenarios."""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from loguru import logger

from src.app import App, ExitCode
from src.config.logger import setup_logger
from src.config.settings import load_scenario
from src.config.texts import AppInfo, CliHelp
from src.constants.path import Directories, Files
from src.constants.settings import DEFAULT_FRAME_WORKERS
from src.services.errors import ScenarioConfigError
from src.services.scenario import Scenario, builtin_scenario, list_scenarios
from src.utils.frames import parse_frame_range


def _frame_range(text: str) -> range:
    try:
        return parse_frame_range(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help=CliHelp.OUT)
    parser.add_argument("--plots", action="store_true", help=CliHelp.PLOTS)
    parser.add_argument("--frames", type=_frame_range, default=None, help=CliHelp.FRAMES)
    parser.add_argument("--workers", type=int, default=DEFAULT_FRAME_WORKERS, help=CliHelp.WORKERS)


def build_parser() -> argparse.ArgumentParser:
    """Собрать парсер аргументов."""
    parser = argparse.ArgumentParser(prog=AppInfo.TITLE, description=AppInfo.DESCRIPTION)
    parser.add_argument("-v", "--verbose", action="store_true", help=CliHelp.VERBOSE)
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help=CliHelp.RUN)
    run.add_argument("config", type=Path, help=CliHelp.CONFIG)
    _add_run_options(run)

    builtin = commands.add_parser("run-builtin", help=CliHelp.RUN_BUILTIN)
    builtin.add_argument("name", help=CliHelp.NAME)
    _add_run_options(builtin)

    commands.add_parser("list-scenarios", help=CliHelp.LIST)
    return parser


def _scenario(args: argparse.Namespace) -> Scenario:
    if args.command == "run":
        return load_scenario(args.config)
    return builtin_scenario(args.name)


def _check_frames(frames: range | None, scenario: Scenario) -> None:
    if frames is not None and frames.start >= len(scenario.poses):
        raise ScenarioConfigError(
            f"--frames {frames.start}..{frames.stop - 1}: "
            f"scenario {scenario.name} has {len(scenario.poses)} frame(s)"
        )


def main(argv: Sequence[str] | None = None) -> int:
    """Разобрать аргументы и выполнить команду.

    Args:
        argv: Аргументы без имени программы; по умолчанию sys.argv[1:].

    Returns:
        Код завершения: 0 без ошибок, 1 при ошибках в кадрах,
        2 при ошибке конфигурации, 3 если вывод не записан.

    """
    args = build_parser().parse_args(argv)

    if args.command == "list-scenarios":
        for name in list_scenarios():
            print(name)
        return ExitCode.OK

    Directories().make_dirs()
    setup_logger(level="DEBUG" if args.verbose else "INFO", log_path=Files.LOG_PATH)

    if args.workers < 1:
        logger.error(f"--workers must be >= 1, got {args.workers}")
        return ExitCode.CONFIG_ERROR
    try:
        scenario = _scenario(args)
        scenario.validate()
        _check_frames(args.frames, scenario)
    except ScenarioConfigError as e:
        logger.error(f"Ошибка конфигурации: {e}")
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR

    app = App(
        scenario,
        out_dir=args.out,
        plots=args.plots,
        frames=args.frames,
        workers=args.workers,
    )
    return app.run()
