// Thin typed client over the simulator's JSON API.  Every method throws
// ApiError with the server's detail message on a non-2xx response.

import type {
  PresetsResponse,
  ScenarioRequest,
  SimulateResponse,
  SweepResponse,
} from './types.js';

export class ApiError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

function describeDetail(detail: unknown): string {
  if (typeof detail === 'string') return detail;
  if (Array.isArray(detail)) {
    return detail
      .map((e) => (e && e.field ? `${e.field}: ${e.message}` : String(e.message ?? e)))
      .join('; ');
  }
  return 'request failed';
}

async function request<T>(path: string, body?: unknown): Promise<T> {
  const init: RequestInit = body === undefined
    ? { method: 'GET' }
    : {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(body),
      };
  const resp = await fetch(path, init);
  const payload = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, describeDetail((payload as { detail?: unknown }).detail));
  }
  return payload as T;
}

export function getPresets(): Promise<PresetsResponse> {
  return request('/api/presets');
}

export function simulate(body: ScenarioRequest): Promise<SimulateResponse> {
  return request('/api/simulate', body);
}

export function runSweep(
  body: ScenarioRequest & { parameter: string; minimum: number; maximum: number },
): Promise<SweepResponse> {
  return request('/api/sweep', body);
}
