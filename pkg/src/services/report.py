"""CSV/JSON-артефакты прогона.

Все файлы в UTF-8, числа с плавающей точкой в CSV с шестью знаками,
время выполнения в файлы не пишется: повторный прогон даёт те же байты.
"""

import csv
import json
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger

from src.constants.path import Files
from src.constants.settings import REPORT_SCHEMA_VERSION
from src.services.scenario import DetectorScore, FrameResult, ScenarioRun

POINTS_HEADER = (
    "frame",
    "side",
    "line_id",
    "truth_label",
    "marking_type",
    "point_index",
    "x",
    "y",
    "z",
)
TRACED_HEADER = (
    "frame",
    "detector",
    "role",
    "order",
    "line_id",
    "truth_label",
    "marking_type",
    "point_index",
    "x",
    "y",
    "z",
)
TRAJECTORY_HEADER = ("frame", "detector", "x", "y_left_fit", "y_right_fit", "y_center")


def _f(value: float) -> str:
    return f"{value:.6f}"


def _write_rows(path: Path, header: tuple[str, ...], rows: list[list[Any]]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug(f"Записано {len(rows)} строк в {path}")
    return path


def points_rows(frames: tuple[FrameResult, ...]) -> list[list[Any]]:
    """Строки points.csv: все точки датчика с исходной границей."""
    rows: list[list[Any]] = []
    for frame in frames:
        if frame.cloud is None:
            continue
        for obj in frame.cloud.objects:
            for index, p in enumerate(obj.points):
                rows.append(
                    [
                        frame.report.frame,
                        obj.side,
                        obj.id,
                        obj.truth_label,
                        int(obj.marking_type),
                        index,
                        _f(p.x),
                        _f(p.y),
                        _f(p.z),
                    ]
                )
    return rows


def traced_rows(frames: tuple[FrameResult, ...]) -> list[list[Any]]:
    """Строки traced.csv: все точки найденных линий с происхождением."""
    rows: list[list[Any]] = []
    for frame in frames:
        for detector, outcome in frame.outcomes.items():
            for role, line in outcome.lines.items():
                for order, (p, src) in enumerate(zip(line.points, line.provenance, strict=True)):
                    rows.append(
                        [
                            frame.report.frame,
                            detector,
                            role,
                            order,
                            src.line_id,
                            src.truth_label,
                            int(src.marking_type),
                            src.point_index,
                            _f(p.x),
                            _f(p.y),
                            _f(p.z),
                        ]
                    )
    return rows


def trajectory_rows(frames: tuple[FrameResult, ...]) -> list[list[Any]]:
    """Строки trajectory.csv: линии тренда и осевая линия в точках осевой."""
    rows: list[list[Any]] = []
    for frame in frames:
        for detector, trajectory in frame.trajectories.items():
            xs = np.array([p.x for p in trajectory.center_samples])
            lefts, rights = trajectory.left(xs), trajectory.right(xs)
            for p, y_left, y_right in zip(trajectory.center_samples, lefts, rights, strict=True):
                rows.append(
                    [frame.report.frame, detector, _f(p.x), _f(y_left), _f(y_right), _f(p.y)]
                )
    return rows


def _score_dict(score: DetectorScore) -> dict[str, Any]:
    return {
        "purity": {str(role): value for role, value in score.purity.items()},
        "preview_m": {str(role): value for role, value in score.preview.items()},
        "points": {str(role): value for role, value in score.points.items()},
        "truth_labels": {str(role): list(value) for role, value in score.truth_labels.items()},
        "trajectory_max_error_m": score.trajectory_max_error,
        "trajectory_mean_error_m": score.trajectory_mean_error,
        "seed_failures": list(score.seed_failures),
        "warnings": list(score.warnings),
    }


def report_dict(run: ScenarioRun) -> dict[str, Any]:
    """Содержимое report.json."""
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "scenario": run.scenario.name,
        "detectors": [str(name) for name in run.scenario.detectors],
        "frames": [
            {
                "frame": report.frame,
                "s": report.s,
                "errors": list(report.errors),
                "detectors": {
                    str(name): _score_dict(score) for name, score in report.scores.items()
                },
            }
            for report in run.reports
        ],
        "summary": run.summary(),
        "frame_errors": sum(1 for report in run.reports if report.errors),
    }


def write_reports(run: ScenarioRun, out_dir: Path) -> list[Path]:
    """Записать points.csv, traced.csv, trajectory.csv и report.json.

    Args:
        run: Результат прогона.
        out_dir: Каталог вывода (создаётся при необходимости).

    Returns:
        Пути записанных файлов.

    """
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        _write_rows(out_dir / Files.POINTS_CSV, POINTS_HEADER, points_rows(run.frames)),
        _write_rows(out_dir / Files.TRACED_CSV, TRACED_HEADER, traced_rows(run.frames)),
        _write_rows(out_dir / Files.TRAJECTORY_CSV, TRAJECTORY_HEADER, trajectory_rows(run.frames)),
    ]
    report_path = out_dir / Files.REPORT_JSON
    report_path.write_text(
        json.dumps(report_dict(run), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    written.append(report_path)
    logger.info(f"Отчёты записаны в {out_dir}")
    return written
