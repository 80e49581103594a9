import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiError, getPresets, runSweep, simulate } from '../src/api.js';

function mockFetch(status: number, payload: unknown) {
  const fn = vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    json: async () => payload,
  }));
  vi.stubGlobal('fetch', fn);
  return fn;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('simulate', () => {
  it('POSTs the body and returns the parsed response', async () => {
    const payload = {
      engine_version: '0.1.0',
      spec: { label: 'baseline', params: {} },
      trajectory: {
        times: [1, 2],
        series: { census: [50, 51] },
        activation_intervals: [],
        balance_error: 0,
        decimated: false,
        n_steps_full: 2,
      },
    };
    const fetchMock = mockFetch(200, payload);
    const resp = await simulate({ preset: 'baseline' });
    expect(resp.trajectory.series.census).toEqual([50, 51]);
    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe('/api/simulate');
    expect(init.method).toBe('POST');
    expect(JSON.parse(init.body as string)).toEqual({ preset: 'baseline' });
  });

  it('throws ApiError with the string detail on 422', async () => {
    mockFetch(422, { detail: 'total_beds must be > 0' });
    await expect(simulate({ params: { total_beds: -5 } })).rejects.toMatchObject({
      status: 422,
      message: 'total_beds must be > 0',
    });
  });

  it('flattens field-level details on 400', async () => {
    mockFetch(400, {
      detail: [{ field: 'body.bogus', message: 'Extra inputs are not permitted' }],
    });
    const err = await simulate({}).catch((e) => e as ApiError);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.message).toContain('body.bogus');
  });
});

describe('getPresets', () => {
  it('GETs the preset catalog', async () => {
    const fetchMock = mockFetch(200, { presets: { baseline: {}, stressed: {} }, engine_version: 'x' });
    const resp = await getPresets();
    expect(Object.keys(resp.presets)).toEqual(['baseline', 'stressed']);
    const [, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(init.method).toBe('GET');
  });
});

describe('runSweep', () => {
  it('passes sweep bounds through untouched', async () => {
    const report = {
      parameter: 'census_trigger',
      input_min: 48,
      input_base: 54,
      input_max: 60,
      scenario_label: 'stressed',
      outputs: {},
    };
    const fetchMock = mockFetch(200, { engine_version: 'x', report });
    const resp = await runSweep({
      preset: 'stressed',
      parameter: 'census_trigger',
      minimum: 48,
      maximum: 60,
    });
    expect(resp.report.parameter).toBe('census_trigger');
    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe('/api/sweep');
    expect(JSON.parse(init.body as string).minimum).toBe(48);
  });
});
