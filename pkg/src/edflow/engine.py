"""Fixed-step stock-and-flow machinery.

Generic building blocks used by the ED model: a uniform time grid,
explicit Euler stepping with non-negativity clipping, conveyor-style
material delays, first-order smoothing, exogenous test signals, and a
detector for conditions that must hold continuously for a given window.
All times are in hours.
"""

from collections import deque
from dataclasses import dataclass, field
import math

import numpy as np

# slack for comparisons of accumulated float durations (e.g. 12 * 1/6 h)
_EPS = 1e-9


class ValidationError(ValueError):
    """Raised when a construction argument violates a precondition."""


class NumericError(ArithmeticError):
    """Raised when NaN/Inf enters the integration."""


@dataclass(frozen=True)
class TimeGrid:
    """Uniform simulation grid from start_h to end_h with step dt_h."""

    start_h: float
    end_h: float
    dt_h: float

    def __post_init__(self):
        if not (self.dt_h > 0):
            raise ValidationError(f"dt_h must be > 0, got {self.dt_h}")
        if not (self.end_h > self.start_h):
            raise ValidationError(
                f"end_h ({self.end_h}) must exceed start_h ({self.start_h})")
        ratio = (self.end_h - self.start_h) / self.dt_h
        if abs(ratio - round(ratio)) > _EPS * max(1.0, ratio):
            raise ValidationError(
                f"span {self.end_h - self.start_h} h is not divisible by "
                f"dt_h {self.dt_h}")

    @property
    def n_steps(self) -> int:
        return int(round((self.end_h - self.start_h) / self.dt_h))

    def times(self) -> np.ndarray:
        """Grid points including both endpoints (n_steps + 1 values)."""
        return self.start_h + self.dt_h * np.arange(self.n_steps + 1)


def make_time_grid(start_h: float, end_h: float, dt_h: float) -> TimeGrid:
    return TimeGrid(start_h, end_h, dt_h)


_SIGNAL_KINDS = ("pulse", "step", "ramp", "sine", "none")


@dataclass(frozen=True)
class InputSignal:
    """Exogenous arrival-rate signal added on top of the diurnal pattern.

    kind is one of pulse/step/ramp/sine/none; height and baseline are in
    patients/hour, times in hours.
    """

    kind: str = "none"
    height: float = 0.0
    start_h: float = 0.0
    width_h: float = 1.0   # pulse only
    period_h: float = 24.0  # sine only
    baseline: float = 0.0

    def __post_init__(self):
        if self.kind not in _SIGNAL_KINDS:
            raise ValidationError(f"unknown signal kind {self.kind!r}")
        if not math.isfinite(self.height):
            raise ValidationError("height must be finite")
        if self.kind == "pulse" and not (self.width_h > 0):
            raise ValidationError(f"width_h must be > 0 for pulse, got {self.width_h}")
        if self.kind == "sine" and not (self.period_h > 0):
            raise ValidationError(f"period_h must be > 0 for sine, got {self.period_h}")

    def __call__(self, t: float) -> float:
        return eval_input_signal(self, t)


def eval_input_signal(sig: InputSignal, t: float) -> float:
    """Signal value at time t (patients/hour)."""
    if sig.kind == "none":
        return sig.baseline
    if sig.kind == "pulse":
        on = sig.start_h <= t < sig.start_h + sig.width_h
        return sig.baseline + (sig.height if on else 0.0)
    if sig.kind == "step":
        return sig.baseline + (sig.height if t >= sig.start_h else 0.0)
    if sig.kind == "ramp":
        return sig.baseline + sig.height * max(0.0, t - sig.start_h)
    # sine
    return sig.baseline + sig.height * math.sin(
        2.0 * math.pi * (t - sig.start_h) / sig.period_h)


def euler_step(stocks, net_flows, dt_h: float):
    """Advance stocks one explicit-Euler step, clipping at zero.

    Returns (new_stocks, clipped) where clipped is a boolean mask marking
    stocks that would have gone negative; callers that need exact mass
    accounting should rate-limit the offending outflows instead of relying
    on the clip.
    """
    stocks = np.asarray(stocks, dtype=float)
    net_flows = np.asarray(net_flows, dtype=float)
    if stocks.shape != net_flows.shape:
        raise ValidationError("stocks and net_flows must have the same length")
    if not (dt_h > 0):
        raise ValidationError(f"dt_h must be > 0, got {dt_h}")
    if not (np.all(np.isfinite(stocks)) and np.all(np.isfinite(net_flows))):
        raise NumericError("NaN/Inf in stocks or flows")
    raw = stocks + net_flows * dt_h
    clipped = raw < 0.0
    return np.maximum(raw, 0.0), clipped


class PipelineDelay:
    """Conveyor delay: material entered now exits after exactly delay_h.

    Contents live in round(delay_h/dt_h) bins; each step the oldest bin
    exits and a new one is filled with inflow * dt. Mass is conserved to
    float precision.
    """

    def __init__(self, delay_h: float, dt_h: float, initial_total: float = 0.0):
        if not (delay_h > 0 and dt_h > 0):
            raise ValidationError("delay_h and dt_h must be > 0")
        n = max(1, int(round(delay_h / dt_h)))
        if initial_total < 0:
            raise ValidationError("initial_total must be >= 0")
        self.delay_h = delay_h
        self.dt_h = dt_h
        # oldest bin first; uniform spread of any initial content
        self.bins = deque([initial_total / n] * n, maxlen=n)

    @property
    def total(self) -> float:
        return sum(self.bins)

    def peek_outflow(self) -> float:
        """Rate (per hour) at which the oldest bin will exit this step."""
        return self.bins[0] / self.dt_h

    def step(self, inflow: float) -> float:
        """Advance one step: enqueue inflow, release the oldest bin.

        Returns the outflow rate (patients/hour) for this step.
        """
        if inflow < 0:
            raise ValidationError(f"inflow must be >= 0, got {inflow}")
        out = self.bins.popleft()
        self.bins.append(inflow * self.dt_h)
        return out / self.dt_h


@dataclass
class FirstOrderSmooth:
    """Exponential first-order lag toward a target with time constant tau_h."""

    current: float
    tau_h: float

    def __post_init__(self):
        if not (self.tau_h > 0):
            raise ValidationError(f"tau_h must be > 0, got {self.tau_h}")

    def step(self, target: float, dt_h: float) -> float:
        self.current += (target - self.current) * dt_h / self.tau_h
        return self.current


def smooth_step(s: FirstOrderSmooth, target: float, dt_h: float) -> float:
    return s.step(target, dt_h)


@dataclass
class SustainedConditionDetector:
    """Latches active once a condition has held for window_h continuously.

    Any false sample resets the accumulated duration, so brief dips
    restart the clock.
    """

    window_h: float
    consecutive_true_h: float = 0.0
    active: bool = False

    def update(self, condition: bool, dt_h: float) -> bool:
        if condition:
            self.consecutive_true_h += dt_h
        else:
            self.consecutive_true_h = 0.0
        self.active = self.consecutive_true_h >= self.window_h - _EPS
        return self.active


def detector_update(d: SustainedConditionDetector, condition: bool,
                    dt_h: float) -> SustainedConditionDetector:
    d.update(condition, dt_h)
    return d
