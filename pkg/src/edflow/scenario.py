"""Runnable experiments: scenario specs, trajectories, and presets."""

from dataclasses import dataclass, field
import importlib.resources
import json
import math

import numpy as np

from .engine import (
    InputSignal,
    NumericError,
    TimeGrid,
    ValidationError,
    eval_input_signal,
    make_time_grid,
)
from .model import (
    EdParameters,
    EdState,
    diurnal_arrival_rate,
    elective_demand_rate,
    equilibrium_state,
    make_elective_draws,
    step_ed_model,
)

FLOW_NAMES = ("arrivals", "treatment_complete", "to_bed_request",
              "direct_discharge", "bed_assignment", "transfer",
              "elective_admission", "ward_discharge", "returns")

STATE_NAMES = ("census", "boarders", "occupancy", "awaiting_bed",
               "ed_in_treatment", "inpatients", "cum_admitted_elective",
               "cum_returns", "cum_arrivals")

SERIES_NAMES = STATE_NAMES + ("protocol_active",) + FLOW_NAMES


@dataclass(frozen=True)
class ScenarioSpec:
    """A complete reproducible experiment."""

    params: EdParameters = field(default_factory=EdParameters)
    grid: TimeGrid = field(default_factory=lambda: TimeGrid(0.0, 168.0, 1.0 / 6.0))
    exogenous: InputSignal = field(default_factory=InputSignal)
    surge_admit_fraction: float = 0.35
    surge_admit_delay_h: float = 1.0
    seed: int = 12345
    label: str = "scenario"

    def __post_init__(self):
        if not (self.params.admit_fraction <= self.surge_admit_fraction < 1):
            raise ValidationError(
                "surge_admit_fraction must lie in [admit_fraction, 1)")
        if self.surge_admit_delay_h < 0:
            raise ValidationError("surge_admit_delay_h must be >= 0")

    def admit_fraction_at(self, t: float) -> float:
        """Admission fraction at time t, elevated during a surge window."""
        sig = self.exogenous
        if (sig.kind == "pulse"
                and self.surge_admit_fraction > self.params.admit_fraction):
            lo = sig.start_h + self.surge_admit_delay_h
            hi = sig.start_h + sig.width_h + self.surge_admit_delay_h
            if lo <= t < hi:
                return self.surge_admit_fraction
        return self.params.admit_fraction

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "seed": self.seed,
            "grid": {"start_h": self.grid.start_h, "end_h": self.grid.end_h,
                     "dt_h": self.grid.dt_h},
            "exogenous": {
                "kind": self.exogenous.kind, "height": self.exogenous.height,
                "start_h": self.exogenous.start_h,
                "width_h": self.exogenous.width_h,
                "period_h": self.exogenous.period_h,
                "baseline": self.exogenous.baseline,
            },
            "surge_admit_fraction": self.surge_admit_fraction,
            "surge_admit_delay_h": self.surge_admit_delay_h,
            "params": self.params.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioSpec":
        d = dict(d)
        d.pop("description", None)
        known = {"label", "seed", "grid", "exogenous", "surge_admit_fraction",
                 "surge_admit_delay_h", "params"}
        unknown = set(d) - known
        if unknown:
            raise ValidationError(f"unknown scenario field(s): {sorted(unknown)}")
        kwargs = {}
        if "grid" in d:
            g = d["grid"]
            kwargs["grid"] = make_time_grid(
                g.get("start_h", 0.0), g.get("end_h", 168.0),
                g.get("dt_h", 1.0 / 6.0))
        if "exogenous" in d:
            kwargs["exogenous"] = InputSignal(**d["exogenous"])
        if "params" in d:
            kwargs["params"] = EdParameters.from_dict(d["params"])
        for key in ("label", "seed", "surge_admit_fraction",
                    "surge_admit_delay_h"):
            if key in d:
                kwargs[key] = d[key]
        return cls(**kwargs)


@dataclass
class Trajectory:
    """Time-indexed record of every stock, flow, and derived output."""

    times: np.ndarray
    series: dict
    activation_intervals: list
    balance_error: float
    spec: ScenarioSpec

    def __getitem__(self, name: str) -> np.ndarray:
        return self.series[name]

    @property
    def n_steps(self) -> int:
        return len(self.times)

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "series": {k: np.asarray(v).tolist() for k, v in self.series.items()},
            "activation_intervals": [list(iv) for iv in self.activation_intervals],
            "balance_error": self.balance_error,
            "spec": self.spec.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trajectory":
        return cls(
            times=np.asarray(d["times"], dtype=float),
            series={k: np.asarray(v) for k, v in d["series"].items()},
            activation_intervals=[tuple(iv) for iv in d["activation_intervals"]],
            balance_error=d["balance_error"],
            spec=ScenarioSpec.from_dict(d["spec"]),
        )


def _activation_intervals(times, active, dt_h):
    intervals = []
    start = None
    for t, a in zip(times, active):
        if a and start is None:
            start = t
        elif not a and start is not None:
            intervals.append((start, t))
            start = None
    if start is not None:
        intervals.append((start, times[-1] + dt_h))
    return intervals


def run_scenario(spec: ScenarioSpec) -> Trajectory:
    """Simulate the spec over its grid; deterministic for a fixed seed."""
    grid, params = spec.grid, spec.params
    n = grid.n_steps
    dt = grid.dt_h
    draws = make_elective_draws(params, spec.seed,
                                int(math.ceil(grid.end_h)) + 1)
    state = equilibrium_state(params, dt)

    times = np.empty(n)
    rec = {name: np.empty(n) for name in SERIES_NAMES}
    rec["protocol_active"] = np.zeros(n, dtype=bool)

    # step-wise external balance for the conservation check
    total0 = (state.ed_in_treatment + state.awaiting_bed + state.boarders
              + state.inpatients + state.return_pipeline.total)
    net_external = 0.0
    throughput = 0.0

    for i in range(n):
        t = grid.start_h + i * dt
        exo = eval_input_signal(spec.exogenous, t)
        elective = elective_demand_rate(params, draws, t)
        admit = spec.admit_fraction_at(t)
        try:
            f = step_ed_model(state, params, t, dt, exo, elective, admit)
        except NumericError as exc:
            raise NumericError(
                f"numeric failure at step {i} (t={t:.3f} h): {exc}; "
                f"state census={state.census:.3f} "
                f"inpatients={state.inpatients:.3f}") from exc

        # external in: scheduled + exogenous arrivals and admitted electives;
        # external out: ED discharges home and non-returning ward discharges
        ext_in = diurnal_arrival_rate(params, t) + exo + f.elective_admission
        ext_out = f.direct_discharge + f.ward_discharge - f.returns
        net_external += (ext_in - ext_out) * dt
        throughput += ext_in * dt

        t_next = t + dt
        times[i] = t_next
        rec["census"][i] = state.census
        rec["boarders"][i] = state.boarders
        rec["occupancy"][i] = state.effective_occupancy(params)
        rec["awaiting_bed"][i] = state.awaiting_bed
        rec["ed_in_treatment"][i] = state.ed_in_treatment
        rec["inpatients"][i] = state.inpatients
        rec["cum_admitted_elective"][i] = state.cum_admitted_elective
        rec["cum_returns"][i] = state.cum_returns
        rec["cum_arrivals"][i] = state.cum_arrivals
        rec["protocol_active"][i] = state.protocol_detector.active
        for name, value in zip(FLOW_NAMES, (
                f.arrivals, f.treatment_complete, f.to_bed_request,
                f.direct_discharge, f.bed_assignment, f.transfer,
                f.elective_admission, f.ward_discharge, f.returns)):
            rec[name][i] = value

    total1 = (state.ed_in_treatment + state.awaiting_bed + state.boarders
              + state.inpatients + state.return_pipeline.total)
    balance_error = abs(total1 - total0 - net_external) / max(throughput, 1.0)

    return Trajectory(
        times=times, series=rec,
        activation_intervals=_activation_intervals(
            times, rec["protocol_active"], dt),
        balance_error=balance_error, spec=spec)


def make_stressed_scenario(base: ScenarioSpec, pulse_height: float,
                           start_h: float, width_h: float = 3.0,
                           surge_admit_fraction: float = 0.5,
                           surge_admit_delay_h: float = 1.0) -> ScenarioSpec:
    """Overlay a short arrival surge with a delayed admit-fraction rise."""
    if not (pulse_height > 0):
        raise ValidationError("pulse_height must be > 0")
    if not (base.grid.start_h <= start_h
            and start_h + width_h <= base.grid.end_h):
        raise ValidationError("pulse window must lie inside the time grid")
    return ScenarioSpec(
        params=base.params,
        grid=base.grid,
        exogenous=InputSignal(kind="pulse", height=pulse_height,
                              start_h=start_h, width_h=width_h),
        surge_admit_fraction=surge_admit_fraction,
        surge_admit_delay_h=surge_admit_delay_h,
        seed=base.seed,
        label=f"{base.label}+surge",
    )


def _preset_text(name: str) -> str:
    res = importlib.resources.files("edflow").joinpath(f"presets/{name}.json")
    if not res.is_file():
        raise ValidationError(f"unknown preset {name!r}")
    return res.read_text()


def load_preset(name: str) -> ScenarioSpec:
    """Load a shipped preset ('baseline' or 'stressed') by name."""
    return ScenarioSpec.from_dict(json.loads(_preset_text(name)))


def preset_catalog() -> dict:
    """Name -> raw preset dict (including description) for every shipped preset."""
    catalog = {}
    for name in ("baseline", "stressed"):
        catalog[name] = json.loads(_preset_text(name))
    return catalog
