"""Text constants for the command line."""


class AppInfo:
    """Application information texts."""

    TITLE = "aldm-sim"
    DESCRIPTION = (
        "Сравнение базового детектора линий и ALDM на синтетических дорогах: "
        "датчик линий, трассировка, траектория по середине полосы, отчёты и SVG-графики."
    )


class CliHelp:
    """Help strings for commands and options."""

    RUN = "Прогнать сценарий из TOML-файла"
    RUN_BUILTIN = "Прогнать встроенный сценарий"
    LIST = "Показать встроенные сценарии"
    CONFIG = "Путь к TOML-конфигурации сценария"
    NAME = "Имя встроенного сценария"
    OUT = "Каталог для отчётов (по умолчанию app_data/runs/<сценарий>)"
    PLOTS = "Записать SVG-график для каждого кадра"
    FRAMES = "Диапазон кадров a..b (включительно)"
    WORKERS = "Число потоков для обработки кадров"
    VERBOSE = "Подробный лог (DEBUG)"


class Summary:
    """Texts for the end-of-run summary."""

    HEADER = "Сценарий {name}: кадров {frames}, с ошибками {failed}"
    METRIC = "  {detector:<9} {metric:<24} min={min:.4f} mean={mean:.4f} max={max:.4f}"
    METRIC_MISSING = "  {detector:<9} {metric:<24} нет данных"
    OUTPUT = "Результаты: {path}"
