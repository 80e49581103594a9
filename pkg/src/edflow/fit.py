"""Historical-census fit scoring."""

import csv
from dataclasses import dataclass
import importlib.resources

import numpy as np

from .engine import ValidationError
from .scenario import Trajectory


@dataclass(frozen=True)
class FitReport:
    """Error of simulated census against an observed census table."""

    rmse: float
    mae: float
    n_samples: int
    horizon_h: float

    def to_dict(self) -> dict:
        return {"rmse": self.rmse, "mae": self.mae,
                "n_samples": self.n_samples, "horizon_h": self.horizon_h}


def compare_history(traj: Trajectory, observed_times_h,
                    observed_census) -> FitReport:
    """Interpolate simulated census onto observed timestamps; score RMSE/MAE."""
    t = np.asarray(observed_times_h, dtype=float)
    y = np.asarray(observed_census, dtype=float)
    if t.size < 2:
        raise ValidationError("need at least 2 observed samples")
    if t.size != y.size:
        raise ValidationError("times and census must have the same length")
    if np.any(np.diff(t) <= 0):
        raise ValidationError("observed timestamps must be strictly increasing")
    if t[0] < traj.times[0] or t[-1] > traj.times[-1]:
        raise ValidationError("observed timestamps must lie within the run grid")
    if np.any(y < 0):
        raise ValidationError("observed census must be non-negative")
    model = np.interp(t, traj.times, traj["census"])
    err = model - y
    return FitReport(
        rmse=float(np.sqrt(np.mean(err ** 2))),
        mae=float(np.mean(np.abs(err))),
        n_samples=int(t.size),
        horizon_h=float(t[-1] - t[0]))


def read_observed_csv(path_or_file) -> tuple:
    """Read an observed-census CSV with header `time_h,census`."""
    if hasattr(path_or_file, "read"):
        rows = list(csv.reader(path_or_file))
    else:
        with open(path_or_file, newline="") as f:
            rows = list(csv.reader(f))
    if not rows or [c.strip() for c in rows[0]] != ["time_h", "census"]:
        raise ValidationError("expected CSV header 'time_h,census'")
    times, census = [], []
    for row in rows[1:]:
        if not row:
            continue
        times.append(float(row[0]))
        census.append(float(row[1]))
    return np.array(times), np.array(census)


def sample_observed() -> tuple:
    """The bundled synthetic observed-census sample (format demo only)."""
    res = importlib.resources.files("edflow").joinpath("data/sample_census.csv")
    import io
    return read_observed_csv(io.StringIO(res.read_text()))
