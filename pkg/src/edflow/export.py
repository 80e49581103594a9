"""CSV/JSON export for trajectories and reports.

CSV trajectories have a header row and one row per time step; report CSVs
mirror the min/base/max layout of the sensitivity tables.  JSON exports
mirror each type's fields and round-trip losslessly via import_json.
"""

import csv
import json

import numpy as np

from .engine import ValidationError
from .fit import FitReport
from .scenario import SERIES_NAMES, Trajectory
from .sensitivity import MonteCarloResult, SensitivityReport


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    return repr(float(value))


def trajectory_csv_rows(traj: Trajectory):
    yield ["time_h", *SERIES_NAMES]
    for i in range(traj.n_steps):
        yield [_fmt(traj.times[i])] + [_fmt(traj.series[name][i])
                                       for name in SERIES_NAMES]


def report_csv_rows(report: SensitivityReport):
    yield ["parameter", "output", "input_min", "input_base", "input_max",
           "value_min", "value_base", "value_max", "pct_min", "pct_max",
           "divergence_time_h"]
    for name, o in report.outputs.items():
        yield [report.parameter, name,
               _fmt(report.input_min), _fmt(report.input_base),
               _fmt(report.input_max), _fmt(o.value_min), _fmt(o.value_base),
               _fmt(o.value_max), f"{o.pct_min:.2f}", f"{o.pct_max:.2f}",
               _fmt(o.divergence_time_h)]


def fit_csv_rows(report: FitReport):
    yield ["rmse", "mae", "n_samples", "horizon_h"]
    yield [_fmt(report.rmse), _fmt(report.mae), str(report.n_samples),
           _fmt(report.horizon_h)]


def export_csv(result, path) -> None:
    """Write a Trajectory, SensitivityReport, or FitReport as CSV."""
    if isinstance(result, Trajectory):
        rows = trajectory_csv_rows(result)
    elif isinstance(result, SensitivityReport):
        rows = report_csv_rows(result)
    elif isinstance(result, FitReport):
        rows = fit_csv_rows(result)
    else:
        raise ValidationError(f"cannot export {type(result).__name__} as CSV")
    try:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"failed writing CSV to {path}: {exc}") from exc


_TYPE_TAGS = {
    "trajectory": Trajectory,
    "sensitivity_report": SensitivityReport,
    "monte_carlo_result": MonteCarloResult,
    "fit_report": FitReport,
}


def _type_tag(result) -> str:
    for tag, cls in _TYPE_TAGS.items():
        if isinstance(result, cls):
            return tag
    raise ValidationError(f"cannot export {type(result).__name__} as JSON")


def to_json_dict(result) -> dict:
    return {"type": _type_tag(result), "data": result.to_dict()}


def export_json(result, path) -> None:
    """Write any result type as a tagged JSON document."""
    doc = to_json_dict(result)
    try:
        with open(path, "w") as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as exc:
        raise OSError(f"failed writing JSON to {path}: {exc}") from exc


def import_json(path):
    """Load a result previously written by export_json."""
    with open(path) as f:
        doc = json.load(f)
    cls = _TYPE_TAGS.get(doc.get("type"))
    if cls is None:
        raise ValidationError(f"unrecognized result type {doc.get('type')!r}")
    if cls is FitReport:
        return FitReport(**doc["data"])
    return cls.from_dict(doc["data"])


def export(result, fmt: str, path) -> None:
    """Dispatch on format: 'csv' or 'json'."""
    if fmt == "csv":
        export_csv(result, path)
    elif fmt == "json":
        export_json(result, path)
    else:
        raise ValidationError(f"unknown export format {fmt!r}")
