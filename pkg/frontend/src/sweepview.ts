// Sweep result table.  Values are rendered verbatim from the server's
// report; the client does no recomputation of deviations.

import type { SweepReport } from './types.js';

export interface SweepRow {
  output: string;
  valueMin: string;
  valueBase: string;
  valueMax: string;
  pctMin: string;
  pctMax: string;
  divergenceTime: string;
}

export function formatPct(pct: number): string {
  return `${pct >= 0 ? '+' : ''}${pct.toFixed(2)}%`;
}

export function sweepRows(report: SweepReport): SweepRow[] {
  return Object.entries(report.outputs).map(([output, o]) => ({
    output,
    valueMin: o.value_min.toFixed(2),
    valueBase: o.value_base.toFixed(2),
    valueMax: o.value_max.toFixed(2),
    pctMin: formatPct(o.pct_min),
    pctMax: formatPct(o.pct_max),
    divergenceTime: `${o.divergence_time_h.toFixed(1)} h`,
  }));
}

export function sweepCaption(report: SweepReport): string {
  return (
    `${report.parameter}: ${report.input_min} / ${report.input_base} / ` +
    `${report.input_max} (${report.scenario_label})`
  );
}

export function renderSweepTable(container: HTMLElement, report: SweepReport): void {
  container.innerHTML = '';
  const caption = document.createElement('p');
  caption.className = 'sweep-caption';
  caption.textContent = sweepCaption(report);
  container.appendChild(caption);

  const table = document.createElement('table');
  table.className = 'sweep-table';
  const head = table.insertRow();
  for (const label of ['output', 'min', 'base', 'max', 'dev(min)', 'dev(max)', 'diverges at']) {
    const th = document.createElement('th');
    th.textContent = label;
    head.appendChild(th);
  }
  for (const row of sweepRows(report)) {
    const tr = table.insertRow();
    for (const cell of [
      row.output,
      row.valueMin,
      row.valueBase,
      row.valueMax,
      row.pctMin,
      row.pctMax,
      row.divergenceTime,
    ]) {
      tr.insertCell().textContent = cell;
    }
  }
  container.appendChild(table);
}
