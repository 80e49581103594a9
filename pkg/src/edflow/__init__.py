"""edflow: system-dynamics simulation of emergency-department crowding."""

__version__ = "0.1.0"

from .engine import (
    FirstOrderSmooth,
    InputSignal,
    NumericError,
    PipelineDelay,
    SustainedConditionDetector,
    TimeGrid,
    ValidationError,
    euler_step,
    eval_input_signal,
    make_time_grid,
)
from .model import (
    EdParameters,
    EdState,
    FlowRates,
    compute_flows,
    diurnal_arrival_rate,
    occupancy_restriction,
    protocol_criteria,
    step_ed_model,
)
from .scenario import (
    ScenarioSpec,
    Trajectory,
    load_preset,
    make_stressed_scenario,
    preset_catalog,
    run_scenario,
)
