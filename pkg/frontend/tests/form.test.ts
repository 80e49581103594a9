import { describe, expect, it } from 'vitest';
import { DEFAULT_FORM, buildRequest, parseOverrides } from '../src/form.js';

describe('buildRequest', () => {
  it('builds a default baseline request', () => {
    const { request, errors } = buildRequest(DEFAULT_FORM);
    expect(errors).toEqual([]);
    expect(request).toBeDefined();
    expect(request!.preset).toBe('baseline');
    expect(request!.grid).toEqual({ start_h: 0, end_h: 168, dt_h: 10 / 60 });
    expect(request!.exogenous).toBeUndefined();
    expect(request!.params).toBeUndefined();
  });

  it('adds a pulse when height > 0', () => {
    const { request } = buildRequest({ ...DEFAULT_FORM, pulseHeight: '40' });
    expect(request!.exogenous).toMatchObject({
      kind: 'pulse',
      height: 40,
      start_h: 24,
      width_h: 3,
    });
  });

  it('rejects non-numeric fields with a message each', () => {
    const { request, errors } = buildRequest({
      ...DEFAULT_FORM,
      horizonH: 'week',
      seed: 'abc',
    });
    expect(request).toBeUndefined();
    expect(errors.some((e) => e.includes('horizon'))).toBe(true);
    expect(errors.some((e) => e.includes('seed'))).toBe(true);
  });

  it('rejects a horizon not divisible by the step', () => {
    const { errors } = buildRequest({ ...DEFAULT_FORM, horizonH: '100', dtMinutes: '45' });
    expect(errors.some((e) => e.includes('divisible'))).toBe(true);
  });

  it('rejects a pulse window outside the horizon', () => {
    const { errors } = buildRequest({
      ...DEFAULT_FORM,
      pulseHeight: '40',
      pulseStartH: '167',
    });
    expect(errors.some((e) => e.includes('pulse window'))).toBe(true);
  });

  it('rejects non-integer seeds and non-positive steps', () => {
    expect(buildRequest({ ...DEFAULT_FORM, seed: '1.5' }).errors.length).toBe(1);
    expect(buildRequest({ ...DEFAULT_FORM, dtMinutes: '0' }).errors.length).toBeGreaterThan(0);
  });
});

describe('parseOverrides', () => {
  it('parses name=value lines and skips blanks', () => {
    const errors: string[] = [];
    const result = parseOverrides('total_beds=450\n\n  transfer_time_h = 1.0 \n', errors);
    expect(errors).toEqual([]);
    expect(result).toEqual({ total_beds: 450, transfer_time_h: 1.0 });
  });

  it('reports malformed lines without dropping good ones', () => {
    const errors: string[] = [];
    const result = parseOverrides('total_beds=450\nnonsense\nbeds=many', errors);
    expect(result).toEqual({ total_beds: 450 });
    expect(errors.length).toBe(2);
  });
});
