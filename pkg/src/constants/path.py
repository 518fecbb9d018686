"""Константы путей приложения."""

from pathlib import Path


def get_base_dir() -> Path:
    """Получить корневую директорию проекта.

    Returns:
        Корневая директория (рядом с main.py).

    """
    return Path(__file__).parent.parent.parent


class Directories:
    """Директории приложения.

    Логи и результаты прогонов по умолчанию пишутся в app_data/,
    примеры конфигураций сценариев лежат в scenarios/.
    """

    LOGS_DIR: Path = get_base_dir() / "app_data" / "logs"
    OUTPUT_DIR: Path = get_base_dir() / "app_data" / "runs"
    SCENARIOS_DIR: Path = get_base_dir() / "scenarios"

    def make_dirs(self) -> None:
        """Создать директории для логов и результатов."""
        for value in (type(self).LOGS_DIR, type(self).OUTPUT_DIR):
            value.mkdir(parents=True, exist_ok=True)


class Files:
    """Файлы приложения и имена выходных артефактов прогона."""

    LOG_PATH: Path = Directories.LOGS_DIR / "log.log"
    POINTS_CSV: str = "points.csv"
    TRACED_CSV: str = "traced.csv"
    TRAJECTORY_CSV: str = "trajectory.csv"
    REPORT_JSON: str = "report.json"
    FRAME_SVG_TEMPLATE: str = "frame_{index}.svg"
