"""ED crowding stock-and-flow model.

Stocks: patients in ED treatment, patients awaiting a bed, ED boarders,
ward inpatients, and a return pipeline of prematurely discharged patients
who re-present within a fixed delay.  A crowding protocol fires when the
boarder and census thresholds both hold for a sustained window; while its
(lagged) effect is active, ward release times shorten, the fraction of
discharges that return rises, and elective admissions are curtailed.
"""

from dataclasses import dataclass, field, asdict, replace
import math

import numpy as np

from .engine import (
    FirstOrderSmooth,
    NumericError,
    PipelineDelay,
    SustainedConditionDetector,
    ValidationError,
)


def _normalized(values):
    v = np.asarray(values, dtype=float)
    return tuple(v * (len(v) / v.sum()))


# Hour-of-day arrival multipliers: overnight trough, late-morning ramp,
# sustained afternoon peak, evening decline.  Normalized to mean 1.
DEFAULT_DIURNAL = _normalized([
    0.75, 0.62, 0.52, 0.46, 0.44, 0.46, 0.55, 0.74,
    0.95, 1.15, 1.30, 1.38, 1.40, 1.38, 1.35, 1.32,
    1.30, 1.28, 1.26, 1.22, 1.15, 1.05, 0.95, 0.84,
])

# Mean daily arrivals per weekday (day 0 = first simulated day).
DEFAULT_DAILY_ARRIVALS = (202.0, 200.0, 198.0, 197.0, 196.0, 192.0, 194.0)


@dataclass(frozen=True)
class EdParameters:
    """All model constants; immutable and shareable between runs."""

    total_beds: float = 500.0
    bed_assign_time_h: float = 2.9
    transfer_time_h: float = 1.56
    mean_elective_per_day: float = 150.0
    elective_sd_per_day: float = 15.0
    admit_fraction: float = 0.35
    ed_treatment_time_h: float = 4.0
    normal_release_time_h: float = 72.0
    policy_release_factor: float = 0.8
    return_fraction_normal: float = 0.05
    return_fraction_policy: float = 0.15
    return_delay_h: float = 36.0
    protocol_effect_delay_h: float = 0.5
    boarder_trigger: float = 10.0
    census_trigger: float = 54.0
    trigger_window_h: float = 2.0
    # occupancy level where elective admissions begin to be throttled
    elective_restriction_knee: float = 0.85
    # ED bed assignment keeps priority until occupancy is nearly full
    ed_restriction_knee: float = 0.99
    # elective admissions are scaled by this factor while the protocol
    # effect is fully active
    elective_policy_factor: float = 0.0
    diurnal_multipliers: tuple = DEFAULT_DIURNAL
    daily_mean_arrivals: tuple = DEFAULT_DAILY_ARRIVALS

    def __post_init__(self):
        for name in ("bed_assign_time_h", "transfer_time_h",
                     "ed_treatment_time_h", "normal_release_time_h",
                     "return_delay_h", "protocol_effect_delay_h",
                     "trigger_window_h"):
            if not (getattr(self, name) > 0):
                raise ValidationError(f"{name} must be > 0")
        if not (0 < self.admit_fraction < 1):
            raise ValidationError("admit_fraction must be in (0, 1)")
        if not (0 <= self.return_fraction_normal < 1
                and 0 <= self.return_fraction_policy < 1):
            raise ValidationError("return fractions must be in [0, 1)")
        if self.return_fraction_policy < self.return_fraction_normal:
            raise ValidationError(
                "return_fraction_policy must be >= return_fraction_normal")
        if not (0 < self.policy_release_factor <= 1):
            raise ValidationError("policy_release_factor must be in (0, 1]")
        if not (self.boarder_trigger > 0 and self.census_trigger > 0):
            raise ValidationError("trigger thresholds must be > 0")
        if not (self.total_beds > 0):
            raise ValidationError("total_beds must be > 0")
        if not (0 <= self.elective_policy_factor <= 1):
            raise ValidationError("elective_policy_factor must be in [0, 1]")
        if len(self.diurnal_multipliers) != 24:
            raise ValidationError("diurnal_multipliers needs 24 values")
        if abs(np.mean(self.diurnal_multipliers) - 1.0) > 1e-6:
            raise ValidationError("diurnal_multipliers must average to 1")
        if len(self.daily_mean_arrivals) != 7:
            raise ValidationError("daily_mean_arrivals needs 7 values")
        object.__setattr__(self, "diurnal_multipliers",
                           tuple(float(v) for v in self.diurnal_multipliers))
        object.__setattr__(self, "daily_mean_arrivals",
                           tuple(float(v) for v in self.daily_mean_arrivals))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["diurnal_multipliers"] = list(self.diurnal_multipliers)
        d["daily_mean_arrivals"] = list(self.daily_mean_arrivals)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EdParameters":
        d = dict(d)
        for key in ("diurnal_multipliers", "daily_mean_arrivals"):
            if key in d:
                d[key] = tuple(d[key])
        unknown = set(d) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ValidationError(f"unknown parameter(s): {sorted(unknown)}")
        return cls(**d)

    def with_updates(self, **kwargs) -> "EdParameters":
        return replace(self, **kwargs)


def occupancy_restriction(effective_occupancy: float, knee: float = 0.85) -> float:
    """Admission throttle: 1 below the knee, linear to 0 at full occupancy."""
    if effective_occupancy < 0:
        raise ValidationError("occupancy must be >= 0")
    if effective_occupancy <= knee:
        return 1.0
    if effective_occupancy >= 1.0:
        return 0.0
    return (1.0 - effective_occupancy) / (1.0 - knee)


def diurnal_arrival_rate(params: EdParameters, t: float,
                         weekday: int | None = None) -> float:
    """Scheduled ED arrival rate (patients/hour) at simulation time t."""
    if weekday is None:
        weekday = int(t // 24.0) % 7
    hour = int(t % 24.0)
    return (params.daily_mean_arrivals[weekday] / 24.0
            * params.diurnal_multipliers[hour])


def make_elective_draws(params: EdParameters, seed: int, n_hours: int) -> np.ndarray:
    """Pre-draw one elective demand rate (patients/hour) per simulated hour.

    Drawing per hour keeps trajectories independent of dt and reproducible
    under the scenario seed.
    """
    mean = params.mean_elective_per_day / 24.0
    sd = params.elective_sd_per_day / 24.0
    if sd == 0:
        return np.full(n_hours, mean)
    rng = np.random.default_rng(seed)
    return np.maximum(0.0, rng.normal(mean, sd, size=n_hours))


def elective_demand_rate(params: EdParameters, draws: np.ndarray, t: float) -> float:
    """Elective demand for the hour containing t; constant within the hour."""
    return float(draws[int(t)])


@dataclass
class EdState:
    """Mutable per-run state: the four stocks plus delay/protocol machinery."""

    ed_in_treatment: float
    awaiting_bed: float
    boarders: float
    inpatients: float
    return_pipeline: PipelineDelay
    protocol_detector: SustainedConditionDetector
    release_time_smooth: FirstOrderSmooth
    cum_admitted_elective: float = 0.0
    cum_returns: float = 0.0
    cum_arrivals: float = 0.0

    @property
    def census(self) -> float:
        return self.ed_in_treatment + self.awaiting_bed + self.boarders

    def effective_occupancy(self, params: EdParameters) -> float:
        # boarders hold an assigned (claimed) bed during the transfer lag
        return (self.inpatients + self.boarders) / params.total_beds


def equilibrium_state(params: EdParameters, dt_h: float) -> EdState:
    """Analytic steady state at the weekly-mean arrival rate.

    Solves the occupancy/elective fixed point by iteration so runs start
    near balance; the diurnal cycle entrains within a day.
    """
    base_rate = float(np.mean(params.daily_mean_arrivals)) / 24.0
    e_mean = params.mean_elective_per_day / 24.0
    rel = params.normal_release_time_h
    knee = params.elective_restriction_knee
    arrivals = base_rate
    ward = occ = 0.0
    for _ in range(200):
        admitted = params.admit_fraction * arrivals
        boarders = admitted * params.transfer_time_h
        # occ is linear in the elective multiplier r: occ = a + b*r, and the
        # restriction is r = (1 - occ)/(1 - knee) on its sloped segment, so
        # the fixed point solves in closed form (then clamp to [0, 1]).
        a = (rel * admitted + boarders) / params.total_beds
        b = rel * e_mean / params.total_beds
        r_el = (1.0 - a) / ((1.0 - knee) + b)
        r_el = min(1.0, max(0.0, r_el))
        if a + b <= knee:
            r_el = 1.0
        occ = a + b * r_el
        ward = min(rel * (admitted + e_mean * r_el),
                   params.total_beds - boarders)
        occ = (ward + boarders) / params.total_beds
        returns = params.return_fraction_normal * ward / rel
        new_arrivals = base_rate + returns
        if abs(new_arrivals - arrivals) < 1e-12:
            arrivals = new_arrivals
            break
        arrivals = new_arrivals
    admitted = params.admit_fraction * arrivals
    r_ed = occupancy_restriction(occ, params.ed_restriction_knee)
    pipeline = PipelineDelay(
        params.return_delay_h, dt_h,
        initial_total=params.return_fraction_normal * ward / rel
        * params.return_delay_h)
    return EdState(
        ed_in_treatment=arrivals * params.ed_treatment_time_h,
        awaiting_bed=admitted * params.bed_assign_time_h / max(r_ed, 1e-9),
        boarders=admitted * params.transfer_time_h,
        inpatients=ward,
        return_pipeline=pipeline,
        protocol_detector=SustainedConditionDetector(params.trigger_window_h),
        release_time_smooth=FirstOrderSmooth(
            params.normal_release_time_h, params.protocol_effect_delay_h),
    )


def protocol_criteria(state: EdState, params: EdParameters) -> bool:
    """Instantaneous trigger test: boarder AND census thresholds both met."""
    return (state.boarders >= params.boarder_trigger
            and state.census >= params.census_trigger)


def effective_release_time(state: EdState, params: EdParameters,
                           dt_h: float) -> float:
    """Advance the release-time lag toward its current target and return it.

    The target drops to normal * policy_release_factor while the detector
    is active; the change takes hold with the protocol effect delay.
    """
    factor = params.policy_release_factor if state.protocol_detector.active else 1.0
    target = params.normal_release_time_h * factor
    return state.release_time_smooth.step(target, dt_h)


def protocol_effect_level(state: EdState, params: EdParameters) -> float:
    """Smoothed protocol intensity in [0, 1] derived from the release lag."""
    full = params.normal_release_time_h * (1.0 - params.policy_release_factor)
    if full <= 0:
        return 0.0
    level = (params.normal_release_time_h
             - state.release_time_smooth.current) / full
    return min(1.0, max(0.0, level))


@dataclass
class FlowRates:
    """All flow rates (patients/hour) for one step."""

    arrivals: float
    treatment_complete: float
    to_bed_request: float
    direct_discharge: float
    bed_assignment: float
    transfer: float
    elective_admission: float
    ward_discharge: float
    returns: float


def compute_flows(state: EdState, params: EdParameters, t: float,
                  exogenous: float, elective_demand: float = None,
                  admit_fraction: float = None,
                  release_time_h: float = None) -> FlowRates:
    """Flow rates implied by the current state.

    elective_demand defaults to the deterministic hourly mean; admit_fraction
    defaults to the parameter value (scenarios may elevate it during a
    surge); release_time_h defaults to the current smoothed value.
    """
    if exogenous < 0:
        raise ValidationError("exogenous inflow must be >= 0")
    for v in (state.ed_in_treatment, state.awaiting_bed, state.boarders,
              state.inpatients):
        if not math.isfinite(v) or v < 0:
            raise NumericError(f"invalid stock value {v}")
    if elective_demand is None:
        elective_demand = params.mean_elective_per_day / 24.0
    if admit_fraction is None:
        admit_fraction = params.admit_fraction
    if release_time_h is None:
        release_time_h = state.release_time_smooth.current

    occ = state.effective_occupancy(params)
    r_ed = occupancy_restriction(occ, params.ed_restriction_knee)
    r_el = occupancy_restriction(occ, params.elective_restriction_knee)
    effect = protocol_effect_level(state, params)

    arrivals = (diurnal_arrival_rate(params, t) + exogenous
                + state.return_pipeline.peek_outflow())
    treatment_complete = state.ed_in_treatment / params.ed_treatment_time_h
    to_bed_request = admit_fraction * treatment_complete
    direct_discharge = treatment_complete - to_bed_request
    bed_assignment = (state.awaiting_bed / params.bed_assign_time_h) * r_ed
    transfer = state.boarders / params.transfer_time_h
    elective_admission = (elective_demand * r_el
                          * (1.0 - (1.0 - params.elective_policy_factor) * effect))
    ward_discharge = state.inpatients / release_time_h
    return_fraction = (params.return_fraction_normal
                       + (params.return_fraction_policy
                          - params.return_fraction_normal) * effect)
    returns = ward_discharge * return_fraction
    return FlowRates(arrivals, treatment_complete, to_bed_request,
                     direct_discharge, bed_assignment, transfer,
                     elective_admission, ward_discharge, returns)


def step_ed_model(state: EdState, params: EdParameters, t: float, dt_h: float,
                  exogenous: float, elective_demand: float = None,
                  admit_fraction: float = None) -> FlowRates:
    """Advance the model one Euler step in place; returns the flows used.

    Order per step: trigger detector on the current state, protocol-effect
    lag, flows, occupancy-cap rate limiting, stock update, conveyor shift,
    accumulators.
    """
    state.protocol_detector.update(protocol_criteria(state, params), dt_h)
    release = effective_release_time(state, params, dt_h)
    f = compute_flows(state, params, t, exogenous, elective_demand,
                      admit_fraction, release)

    # never let claimed beds (inpatients + boarders) exceed capacity
    occ_now = state.inpatients + state.boarders
    gain = (f.bed_assignment + f.elective_admission - f.ward_discharge) * dt_h
    room = params.total_beds - occ_now
    if gain > room:
        inflow = f.bed_assignment + f.elective_admission
        if inflow > 0:
            scale = max(0.0, (room + f.ward_discharge * dt_h) / (inflow * dt_h))
            scale = min(1.0, scale)
            f.bed_assignment *= scale
            f.elective_admission *= scale

    d_ed = f.arrivals - f.treatment_complete
    d_await = f.to_bed_request - f.bed_assignment
    d_board = f.bed_assignment - f.transfer
    d_ward = f.transfer + f.elective_admission - f.ward_discharge

    # all outflows are stock/tau with tau > dt, so clipping is a guard only
    state.ed_in_treatment = max(0.0, state.ed_in_treatment + d_ed * dt_h)
    state.awaiting_bed = max(0.0, state.awaiting_bed + d_await * dt_h)
    state.boarders = max(0.0, state.boarders + d_board * dt_h)
    state.inpatients = max(0.0, state.inpatients + d_ward * dt_h)

    state.return_pipeline.step(f.returns)
    state.cum_admitted_elective += f.elective_admission * dt_h
    state.cum_returns += f.returns * dt_h
    state.cum_arrivals += f.arrivals * dt_h
    return f
