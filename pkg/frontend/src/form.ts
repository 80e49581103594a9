// Scenario form model and client-side validation.  The server re-validates
// everything; these checks exist to catch mistakes before a round trip.

import type { ScenarioRequest } from './types.js';

export interface FormValues {
  preset: string;
  horizonH: string;
  dtMinutes: string;
  seed: string;
  pulseHeight: string;
  pulseStartH: string;
  pulseWidthH: string;
  overrides: string; // "name=value" per line
}

export const DEFAULT_FORM: FormValues = {
  preset: 'baseline',
  horizonH: '168',
  dtMinutes: '10',
  seed: '12345',
  pulseHeight: '0',
  pulseStartH: '24',
  pulseWidthH: '3',
  overrides: '',
};

export interface FormResult {
  request?: ScenarioRequest;
  errors: string[];
}

function parseNumber(raw: string, name: string, errors: string[]): number {
  const value = Number(raw.trim());
  if (raw.trim() === '' || !Number.isFinite(value)) {
    errors.push(`${name} must be a number (got "${raw}")`);
    return NaN;
  }
  return value;
}

export function parseOverrides(text: string, errors: string[]): Record<string, number> {
  const overrides: Record<string, number> = {};
  for (const line of text.split('\n')) {
    const trimmed = line.trim();
    if (!trimmed) continue;
    const eq = trimmed.indexOf('=');
    if (eq <= 0) {
      errors.push(`override "${trimmed}" is not name=value`);
      continue;
    }
    const name = trimmed.slice(0, eq).trim();
    const value = Number(trimmed.slice(eq + 1).trim());
    if (!Number.isFinite(value)) {
      errors.push(`override "${name}" has a non-numeric value`);
      continue;
    }
    overrides[name] = value;
  }
  return overrides;
}

export function buildRequest(form: FormValues): FormResult {
  const errors: string[] = [];
  const horizon = parseNumber(form.horizonH, 'horizon', errors);
  const dtMin = parseNumber(form.dtMinutes, 'time step', errors);
  const seed = parseNumber(form.seed, 'seed', errors);
  const height = parseNumber(form.pulseHeight, 'pulse height', errors);
  const start = parseNumber(form.pulseStartH, 'pulse start', errors);
  const width = parseNumber(form.pulseWidthH, 'pulse width', errors);

  if (Number.isFinite(horizon) && horizon <= 0) errors.push('horizon must be > 0');
  if (Number.isFinite(dtMin) && dtMin <= 0) errors.push('time step must be > 0');
  if (Number.isFinite(dtMin) && Number.isFinite(horizon) && dtMin > 0) {
    const steps = (horizon * 60) / dtMin;
    if (Math.abs(steps - Math.round(steps)) > 1e-9) {
      errors.push('horizon must be divisible by the time step');
    }
  }
  if (Number.isFinite(seed) && !Number.isInteger(seed)) errors.push('seed must be an integer');
  if (Number.isFinite(height) && height < 0) errors.push('pulse height must be >= 0');
  if (Number.isFinite(width) && width <= 0) errors.push('pulse width must be > 0');
  if (
    Number.isFinite(start) && Number.isFinite(width) && Number.isFinite(horizon) &&
    height > 0 && (start < 0 || start + width > horizon)
  ) {
    errors.push('pulse window must lie inside the horizon');
  }

  const params = parseOverrides(form.overrides, errors);
  if (errors.length > 0) return { errors };

  const request: ScenarioRequest = {
    preset: form.preset,
    seed,
    grid: { start_h: 0, end_h: horizon, dt_h: dtMin / 60 },
  };
  if (height > 0) {
    request.exogenous = {
      kind: 'pulse',
      height,
      start_h: start,
      width_h: width,
      period_h: 24,
      baseline: 0,
    };
  }
  if (Object.keys(params).length > 0) request.params = params;
  return { request, errors: [] };
}
