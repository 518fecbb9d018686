"""Module for setting up the application logger."""

import sys
from pathlib import Path

from loguru import logger

from src.constants.path import Files


def setup_logger(level: str = "INFO", log_path: Path | None = Files.LOG_PATH) -> None:
    """Set up the application logger.

    Args:
        level: Minimum level for the stderr sink.
        log_path: Rotating log file, or None to log to stderr only.

    """
    logger.remove()
    logger.add(sys.stderr, level=level)
    if log_path is not None:
        logger.add(
            log_path,
            rotation="1 week",
            retention="1 month",
            level="DEBUG",
            encoding="utf-8",
        )
