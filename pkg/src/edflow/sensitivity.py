"""One-at-a-time sweeps and Monte Carlo sensitivity analysis.

A sweep runs a scenario at the minimum, base, and maximum value of one
parameter and reports, per output, the values and percent deviations at
the time where the three trajectories are furthest apart.  Monte Carlo
draws all requested parameters uniformly and summarizes the per-run
outputs with percentile bands.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .engine import ValidationError
from .scenario import ScenarioSpec, Trajectory, run_scenario

SWEEPABLE = ("boarder_trigger", "census_trigger", "total_beds",
             "bed_assign_time_h", "transfer_time_h", "mean_elective_per_day")

# the four reported output variables; cumulative electives mirror the
# weekly admitted-elective totals of the result tables
OUTPUTS = ("occupancy", "census", "boarders", "cum_admitted_elective")

# the four generic input parameters used for Monte Carlo analysis
MC_DEFAULT_RANGES = {
    "total_beds": (400.0, 900.0),
    "bed_assign_time_h": (1.8, 4.0),
    "transfer_time_h": (0.5, 2.5),
    "mean_elective_per_day": (100.0, 200.0),
}


def _with_parameter(spec: ScenarioSpec, name: str, value: float) -> ScenarioSpec:
    return replace(spec, params=spec.params.with_updates(**{name: float(value)}))


@dataclass
class OutputDivergence:
    """Per-output sweep result extracted at that output's divergence time."""

    divergence_time_h: float
    value_min: float
    value_base: float
    value_max: float
    pct_min: float
    pct_max: float


@dataclass
class SensitivityReport:
    """Min/base/max sweep of a single parameter over one scenario."""

    parameter: str
    input_min: float
    input_base: float
    input_max: float
    scenario_label: str
    outputs: dict  # output name -> OutputDivergence

    def to_dict(self) -> dict:
        return {
            "parameter": self.parameter,
            "input_min": self.input_min,
            "input_base": self.input_base,
            "input_max": self.input_max,
            "scenario_label": self.scenario_label,
            "outputs": {
                name: {
                    "divergence_time_h": o.divergence_time_h,
                    "value_min": o.value_min,
                    "value_base": o.value_base,
                    "value_max": o.value_max,
                    "pct_min": o.pct_min,
                    "pct_max": o.pct_max,
                } for name, o in self.outputs.items()
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SensitivityReport":
        return cls(
            parameter=d["parameter"], input_min=d["input_min"],
            input_base=d["input_base"], input_max=d["input_max"],
            scenario_label=d["scenario_label"],
            outputs={name: OutputDivergence(**o)
                     for name, o in d["outputs"].items()})


def _pct(value: float, base: float) -> float:
    if base == 0.0:
        return 0.0 if value == base else float("inf")
    return round(100.0 * (value - base) / base, 2)


def sweep(base: ScenarioSpec, parameter: str, minimum: float,
          maximum: float) -> SensitivityReport:
    """Run min/base/max for one parameter and extract divergence values.

    The divergence time of each output is the earliest time at which the
    spread between the three trajectories is largest.
    """
    if parameter not in SWEEPABLE:
        raise ValidationError(
            f"unknown sweep parameter {parameter!r}; expected one of {SWEEPABLE}")
    base_value = getattr(base.params, parameter)
    runs = [run_scenario(_with_parameter(base, parameter, v))
            for v in (minimum, base_value, maximum)]
    outputs = {}
    for name in OUTPUTS:
        arr = np.stack([r[name] for r in runs])
        spread = arr.max(axis=0) - arr.min(axis=0)
        i = int(np.argmax(spread))  # argmax returns the earliest tie
        vmin, vbase, vmax = (float(arr[k, i]) for k in range(3))
        outputs[name] = OutputDivergence(
            divergence_time_h=float(runs[0].times[i]),
            value_min=vmin, value_base=vbase, value_max=vmax,
            pct_min=_pct(vmin, vbase), pct_max=_pct(vmax, vbase))
    return SensitivityReport(
        parameter=parameter, input_min=float(minimum),
        input_base=float(base_value), input_max=float(maximum),
        scenario_label=base.label, outputs=outputs)


def _run_outputs(traj: Trajectory) -> dict:
    return {
        "occupancy": float(traj["occupancy"].mean()),
        "census": float(traj["census"].mean()),
        "boarders": float(traj["boarders"].mean()),
        "cum_admitted_elective": float(traj["cum_admitted_elective"][-1]),
    }


@dataclass
class MonteCarloResult:
    """Per-run draws/outputs plus 5/50/95 percentile bands per output."""

    n: int
    seed: int
    ranges: dict
    runs: list  # [{"params": {...}, "outputs": {...}}, ...] keyed by run index
    percentiles: dict  # output -> {"p5": ..., "p50": ..., "p95": ...}
    base_outputs: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n, "seed": self.seed,
            "ranges": {k: list(v) for k, v in self.ranges.items()},
            "runs": self.runs, "percentiles": self.percentiles,
            "base_outputs": self.base_outputs,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MonteCarloResult":
        return cls(n=d["n"], seed=d["seed"],
                   ranges={k: tuple(v) for k, v in d["ranges"].items()},
                   runs=d["runs"], percentiles=d["percentiles"],
                   base_outputs=d["base_outputs"])


def monte_carlo(base: ScenarioSpec, ranges: dict, n: int,
                seed: int) -> MonteCarloResult:
    """n runs with parameters drawn uniformly within the given bounds.

    All runs share the scenario's elective-demand seed so degenerate
    bounds reproduce the base run exactly; the draw sequence depends only
    on (ranges, n, seed).
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    for name, (lo, hi) in ranges.items():
        if name not in SWEEPABLE:
            raise ValidationError(f"unknown Monte Carlo parameter {name!r}")
        if not (lo <= hi):
            raise ValidationError(f"bounds for {name} must be ordered")
    rng = np.random.default_rng(seed)
    names = sorted(ranges)
    runs = []
    for i in range(n):
        drawn = {name: float(rng.uniform(*ranges[name])) for name in names}
        spec = replace(base, params=base.params.with_updates(**drawn))
        runs.append({"params": drawn, "outputs": _run_outputs(run_scenario(spec))})
    percentiles = {}
    for name in OUTPUTS:
        values = np.array([r["outputs"][name] for r in runs])
        percentiles[name] = {
            "p5": float(np.percentile(values, 5)),
            "p50": float(np.percentile(values, 50)),
            "p95": float(np.percentile(values, 95)),
        }
    return MonteCarloResult(
        n=n, seed=seed, ranges={k: tuple(v) for k, v in ranges.items()},
        runs=runs, percentiles=percentiles,
        base_outputs=_run_outputs(run_scenario(base)))


def find_min_activating_pulse(base: ScenarioSpec, start_h: float = 24.0,
                              lo: float = 1.0, hi: float = 200.0,
                              iters: int = 30) -> float:
    """Bisect the smallest 3-hour pulse height that activates the protocol."""
    from .scenario import make_stressed_scenario
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        traj = run_scenario(make_stressed_scenario(base, mid, start_h))
        if traj["protocol_active"].any():
            hi = mid
        else:
            lo = mid
    return hi
