"""Загрузка конфигурации сценария из TOML."""

import tomllib
from collections.abc import Mapping
from dataclasses import fields
from pathlib import Path
from typing import Any

from loguru import logger

from src.constants.settings import DEFAULT_LANE_WIDTH_M
from src.schemas.settings import DetectorName, MarkingKind, Section, SegmentKind
from src.services.aldm.types import AldmParams
from src.services.errors import ScenarioConfigError
from src.services.line_sensor import SensorConfig
from src.services.road_model import (
    Arc,
    Continuous,
    Dashed,
    Dotted,
    EgoPose,
    MarkingSpec,
    NoMarking,
    RoadSpec,
    Segment,
    Straight,
)
from src.services.scenario import EgoPath, Scenario

type Table = Mapping[str, Any]

KIND_KEY = "kind"


def _table(data: Table, key: str, path: str, *, required: bool = False) -> Table:
    value = data.get(key)
    if value is None:
        if required:
            raise ScenarioConfigError(f"{path}{key}: section is required")
        return {}
    if not isinstance(value, Mapping):
        raise ScenarioConfigError(f"{path}{key}: expected a table")
    return value


def _tables(data: Table, key: str, path: str) -> list[Table]:
    value = data.get(key, [])
    if not isinstance(value, list) or not all(isinstance(item, Mapping) for item in value):
        raise ScenarioConfigError(f"{path}{key}: expected an array of tables")
    return value


def _number[T: (int, float)](
    table: Table, key: str, path: str, kind: type[T], default: T | None = None
) -> T:
    if key not in table:
        if default is None:
            raise ScenarioConfigError(f"{path}{key}: value is required")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioConfigError(f"{path}{key}: expected a number, got {value!r}")
    if kind is int and not isinstance(value, int):
        raise ScenarioConfigError(f"{path}{key}: expected an integer, got {value!r}")
    return kind(value)


def _warn_unknown(table: Table, known: set[str], path: str) -> None:
    for key in sorted(set(table) - known):
        logger.warning(f"Неизвестный ключ конфигурации {path}{key} пропущен")


def _from_fields[T](cls: type[T], table: Table, path: str) -> T:
    """Собрать dataclass параметров из таблицы: ключи совпадают с именами полей."""
    known = {f.name: f for f in fields(cls)}  # type: ignore[arg-type]
    _warn_unknown(table, set(known), path)
    kwargs: dict[str, Any] = {}
    for name, value in table.items():
        if name not in known:
            continue
        default = known[name].default
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise ScenarioConfigError(f"{path}{name}: expected true or false")
            kwargs[name] = value
        else:
            kwargs[name] = _number(table, name, path, type(default))
    return cls(**kwargs)


class ScenarioSettings:
    """Конфигурация сценария: значения из TOML поверх значений по умолчанию.

    Формат:

        name = "curve"
        detectors = ["baseline", "aldm"]

        [road]
        lane_count = 1
        design_speed = 110

        [[road.segments]]
        kind = "arc"
        radius = 500
        sweep = -0.5

        [[road.markings]]
        kind = "dashed"
        phase = 3.0

        [ego]
        start = 50
        step = 2
        count = 5

    Вместо start/step/count можно перечислить позы в [[ego.poses]].
    Секции [sensor] и [aldm] повторяют имена полей SensorConfig и AldmParams.
    """

    def __init__(self, data: Table, name: str = "scenario") -> None:
        """Инициализировать настройки.

        Args:
            data: Разобранный TOML.
            name: Имя сценария, если в данных его нет.

        """
        self.data = data
        self.name = str(data.get("name", name))

    @classmethod
    def from_file(cls, path: Path) -> "ScenarioSettings":
        """Прочитать конфигурацию из файла.

        Raises:
            ScenarioConfigError: Если файл не читается или не является TOML.

        """
        try:
            with path.open("rb") as f:
                data = tomllib.load(f)
        except OSError as e:
            raise ScenarioConfigError(f"cannot read {path}: {e}") from e
        except tomllib.TOMLDecodeError as e:
            raise ScenarioConfigError(f"{path}: {e}") from e
        else:
            logger.debug(f"Конфигурация прочитана: {path}")
        return cls(data, name=path.stem)

    def road(self) -> RoadSpec:
        """Описание дороги из секции [road]."""
        road = _table(self.data, Section.ROAD, "", required=True)
        path = f"{Section.ROAD}."
        _warn_unknown(
            road,
            {Section.SEGMENTS, Section.MARKINGS, "lane_count", "lane_width", "design_speed"},
            path,
        )
        segments = tuple(
            self._segment(table, f"{path}{Section.SEGMENTS}[{i}].")
            for i, table in enumerate(_tables(road, Section.SEGMENTS, path))
        )
        markings = tuple(
            self._marking(table, f"{path}{Section.MARKINGS}[{i}].")
            for i, table in enumerate(_tables(road, Section.MARKINGS, path))
        )
        design_speed = (
            _number(road, "design_speed", path, float) if "design_speed" in road else None
        )
        return RoadSpec(
            segments=segments,
            lane_count=_number(road, "lane_count", path, int, 1),
            lane_width=_number(road, "lane_width", path, float, DEFAULT_LANE_WIDTH_M),
            boundary_markings=markings,
            design_speed=design_speed,
        )

    @staticmethod
    def _segment(table: Table, path: str) -> Segment:
        kind = table.get(KIND_KEY)
        if kind == SegmentKind.STRAIGHT:
            _warn_unknown(table, {KIND_KEY, "length"}, path)
            return Straight(_number(table, "length", path, float))
        if kind == SegmentKind.ARC:
            _warn_unknown(table, {KIND_KEY, "radius", "sweep"}, path)
            return Arc(_number(table, "radius", path, float), _number(table, "sweep", path, float))
        raise ScenarioConfigError(
            f"{path}{KIND_KEY}: expected one of {[str(k) for k in SegmentKind]}, got {kind!r}"
        )

    @staticmethod
    def _marking(table: Table, path: str) -> MarkingSpec:
        kind = table.get(KIND_KEY)
        if kind == MarkingKind.NONE:
            return NoMarking()
        if kind == MarkingKind.CONTINUOUS:
            return Continuous()
        if kind in (MarkingKind.DASHED, MarkingKind.DOTTED):
            cls = Dashed if kind == MarkingKind.DASHED else Dotted
            _warn_unknown(table, {KIND_KEY, "dash_len", "gap_len", "phase"}, path)
            defaults = cls()
            return cls(
                dash_len=_number(table, "dash_len", path, float, defaults.dash_len),
                gap_len=_number(table, "gap_len", path, float, defaults.gap_len),
                phase=_number(table, "phase", path, float, defaults.phase),
            )
        raise ScenarioConfigError(
            f"{path}{KIND_KEY}: expected one of {[str(k) for k in MarkingKind]}, got {kind!r}"
        )

    def poses(self) -> tuple[EgoPose, ...]:
        """Позы эго из секции [ego]."""
        ego = _table(self.data, Section.EGO, "", required=True)
        path = f"{Section.EGO}."
        pose_keys = {"lane", "lateral_offset", "heading_offset"}
        if Section.POSES in ego:
            _warn_unknown(ego, {Section.POSES}, path)
            poses = []
            for i, table in enumerate(_tables(ego, Section.POSES, path)):
                item = f"{path}{Section.POSES}[{i}]."
                _warn_unknown(table, {"s", *pose_keys}, item)
                poses.append(
                    EgoPose(
                        s=_number(table, "s", item, float),
                        lateral_offset=_number(table, "lateral_offset", item, float, 0.0),
                        heading_offset=_number(table, "heading_offset", item, float, 0.0),
                        lane=_number(table, "lane", item, int, 0),
                    )
                )
            return tuple(poses)

        _warn_unknown(ego, {"start", "step", "count", *pose_keys}, path)
        count = _number(ego, "count", path, int, 1)
        if count < 1:
            raise ScenarioConfigError(f"{path}count: must be >= 1")
        return EgoPath(
            start=_number(ego, "start", path, float),
            step=_number(ego, "step", path, float, 0.0),
            count=count,
            lane=_number(ego, "lane", path, int, 0),
            lateral_offset=_number(ego, "lateral_offset", path, float, 0.0),
            heading_offset=_number(ego, "heading_offset", path, float, 0.0),
        ).poses()

    def detectors(self) -> tuple[DetectorName, ...]:
        """Список детекторов; по умолчанию оба."""
        names = self.data.get("detectors", [str(name) for name in DetectorName])
        try:
            return tuple(DetectorName(name) for name in names)
        except (TypeError, ValueError) as e:
            raise ScenarioConfigError(
                f"detectors: expected names from {[str(n) for n in DetectorName]}, got {names!r}"
            ) from e

    def to_scenario(self) -> Scenario:
        """Собрать и проверить сценарий.

        Raises:
            ScenarioConfigError: Если конфигурация некорректна (с путём до ключа).

        """
        _warn_unknown(
            self.data,
            {"name", "detectors", Section.ROAD, Section.EGO, Section.SENSOR, Section.ALDM},
            "",
        )
        scenario = Scenario(
            name=self.name,
            road=self.road(),
            poses=self.poses(),
            sensor=_from_fields(
                SensorConfig, _table(self.data, Section.SENSOR, ""), f"{Section.SENSOR}."
            ),
            aldm=_from_fields(AldmParams, _table(self.data, Section.ALDM, ""), f"{Section.ALDM}."),
            detectors=self.detectors(),
        )
        scenario.validate()
        logger.info(f"Сценарий {scenario.name}: {len(scenario.poses)} поз")
        return scenario


def load_scenario(path: Path) -> Scenario:
    """Прочитать и проверить сценарий из TOML-файла."""
    return ScenarioSettings.from_file(path).to_scenario()
