import { describe, expect, it } from 'vitest';
import { formatPct, sweepCaption, sweepRows } from '../src/sweepview.js';
import type { SweepReport } from '../src/types.js';

const zeroReport: SweepReport = {
  parameter: 'census_trigger',
  input_min: 48,
  input_base: 54,
  input_max: 60,
  scenario_label: 'stressed',
  outputs: {
    occupancy: {
      divergence_time_h: 0.17,
      value_min: 0.92,
      value_base: 0.92,
      value_max: 0.92,
      pct_min: 0,
      pct_max: 0,
    },
    census: {
      divergence_time_h: 0.17,
      value_min: 50.8,
      value_base: 50.8,
      value_max: 50.8,
      pct_min: 0,
      pct_max: 0,
    },
  },
};

describe('formatPct', () => {
  it('keeps the sign and two decimals, verbatim from the server value', () => {
    expect(formatPct(5.47)).toBe('+5.47%');
    expect(formatPct(-53.28)).toBe('-53.28%');
    expect(formatPct(0)).toBe('+0.00%');
  });
});

describe('sweepRows', () => {
  it('renders a zero-deviation table for the inert census trigger', () => {
    const rows = sweepRows(zeroReport);
    expect(rows).toHaveLength(2);
    for (const row of rows) {
      expect(row.pctMin).toBe('+0.00%');
      expect(row.pctMax).toBe('+0.00%');
      expect(row.valueMin).toBe(row.valueBase);
      expect(row.valueMax).toBe(row.valueBase);
    }
  });

  it('passes server deviations through without recomputation', () => {
    const report: SweepReport = {
      ...zeroReport,
      parameter: 'transfer_time_h',
      outputs: {
        boarders: {
          divergence_time_h: 31.2,
          value_min: 3.1,
          value_base: 9.9,
          value_max: 15.3,
          // deliberately inconsistent with the values: the client must
          // show the reported percentages, not derive its own
          pct_min: -53.28,
          pct_max: 44.79,
        },
      },
    };
    const [row] = sweepRows(report);
    expect(row.pctMin).toBe('-53.28%');
    expect(row.pctMax).toBe('+44.79%');
    expect(row.divergenceTime).toBe('31.2 h');
  });
});

describe('sweepCaption', () => {
  it('summarizes the swept parameter and bounds', () => {
    expect(sweepCaption(zeroReport)).toBe('census_trigger: 48 / 54 / 60 (stressed)');
  });
});
