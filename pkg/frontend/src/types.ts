// Shapes of the JSON API the simulator service exposes.

export interface GridBody {
  start_h: number;
  end_h: number;
  dt_h: number;
}

export interface SignalBody {
  kind: string;
  height: number;
  start_h: number;
  width_h: number;
  period_h: number;
  baseline: number;
}

export interface ScenarioRequest {
  preset?: string;
  label?: string;
  seed?: number;
  grid?: GridBody;
  exogenous?: SignalBody;
  surge_admit_fraction?: number;
  surge_admit_delay_h?: number;
  params?: Record<string, number>;
}

export interface TrajectoryPayload {
  times: number[];
  series: Record<string, number[]>;
  activation_intervals: [number, number][];
  balance_error: number;
  decimated: boolean;
  n_steps_full: number;
}

export interface SimulateResponse {
  engine_version: string;
  spec: { label: string; params: Record<string, unknown> };
  trajectory: TrajectoryPayload;
}

export interface OutputDivergence {
  divergence_time_h: number;
  value_min: number;
  value_base: number;
  value_max: number;
  pct_min: number;
  pct_max: number;
}

export interface SweepReport {
  parameter: string;
  input_min: number;
  input_base: number;
  input_max: number;
  scenario_label: string;
  outputs: Record<string, OutputDivergence>;
}

export interface SweepResponse {
  engine_version: string;
  report: SweepReport;
}

export interface PresetsResponse {
  presets: Record<string, { description?: string }>;
  engine_version: string;
}

export interface ApiErrorDetail {
  field?: string;
  message?: string;
}
