"""Исключения предметной области."""


class AldmSimError(Exception):
    """Базовое исключение симулятора."""


class RoadSpecError(AldmSimError):
    """Некорректное описание дороги."""


class DegenerateInputError(AldmSimError):
    """Вырожденная система (совпадающие x, недостаточный ранг)."""


class SeedFailureError(AldmSimError):
    """Не удалось подобрать три стартовые точки для линии."""


class LaneDetectionError(AldmSimError):
    """Не найдена одна из направляющих линий текущей полосы."""


class FrameError(AldmSimError):
    """Ошибка обработки кадра (например, нет перекрытия границ)."""


class ScenarioConfigError(AldmSimError):
    """Ошибка чтения или проверки конфигурации сценария."""


class PlotError(AldmSimError):
    """Не удалось записать SVG-график."""
