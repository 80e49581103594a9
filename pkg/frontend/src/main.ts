// What-if explorer: scenario form on the left, three charts plus a sweep
// table on the right, all fed exclusively by the simulator's JSON API.

import { ApiError, getPresets, runSweep, simulate } from './api.js';
import { drawChart } from './chart.js';
import { DEFAULT_FORM, buildRequest, type FormValues } from './form.js';
import { renderSweepTable } from './sweepview.js';
import type { TrajectoryPayload } from './types.js';

const CHARTS = [
  { title: 'ED census', series: 'census', color: '#2c6fad', threshold: 54, thresholdLabel: 'census trigger (54)' },
  { title: 'ED boarders', series: 'boarders', color: '#b3742a', threshold: 10, thresholdLabel: 'boarder trigger (10)' },
  { title: 'Inpatient occupancy', series: 'occupancy', color: '#3e8f5a' },
];

let lastRun: TrajectoryPayload | null = null;
let pinnedRun: TrajectoryPayload | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readForm(): FormValues {
  return {
    preset: el<HTMLSelectElement>('preset').value,
    horizonH: el<HTMLInputElement>('horizon').value,
    dtMinutes: el<HTMLInputElement>('dt').value,
    seed: el<HTMLInputElement>('seed').value,
    pulseHeight: el<HTMLInputElement>('pulse-height').value,
    pulseStartH: el<HTMLInputElement>('pulse-start').value,
    pulseWidthH: el<HTMLInputElement>('pulse-width').value,
    overrides: el<HTMLTextAreaElement>('overrides').value,
  };
}

function showErrors(messages: string[]): void {
  const box = el<HTMLDivElement>('errors');
  box.textContent = messages.join('\n');
  box.style.display = messages.length ? 'block' : 'none';
}

function showStatus(text: string): void {
  el<HTMLSpanElement>('status').textContent = text;
}

function redraw(): void {
  if (!lastRun) return;
  const compare = pinnedRun ?? undefined;
  CHARTS.forEach((spec, i) => {
    drawChart(el<HTMLCanvasElement>(`chart-${i}`), lastRun!, spec, compare);
  });
  const bands = lastRun.activation_intervals;
  showStatus(
    bands.length === 0
      ? 'protocol never activated'
      : bands.map(([a, b]) => `protocol active ${a.toFixed(1)}-${b.toFixed(1)} h`).join(', '),
  );
}

async function onRun(): Promise<void> {
  const { request, errors } = buildRequest(readForm());
  showErrors(errors);
  if (!request) return;
  showStatus('running...');
  try {
    const resp = await simulate(request);
    lastRun = resp.trajectory;
    redraw();
  } catch (err) {
    showErrors([err instanceof ApiError ? `server: ${err.message}` : String(err)]);
    showStatus('failed');
  }
}

function onPin(): void {
  if (!lastRun) return;
  pinnedRun = lastRun;
  el<HTMLButtonElement>('clear-pin').disabled = false;
  redraw();
}

function onClearPin(): void {
  pinnedRun = null;
  el<HTMLButtonElement>('clear-pin').disabled = true;
  redraw();
}

async function onSweep(): Promise<void> {
  const { request, errors } = buildRequest(readForm());
  showErrors(errors);
  if (!request) return;
  const parameter = el<HTMLSelectElement>('sweep-parameter').value;
  const minimum = Number(el<HTMLInputElement>('sweep-min').value);
  const maximum = Number(el<HTMLInputElement>('sweep-max').value);
  if (!Number.isFinite(minimum) || !Number.isFinite(maximum) || minimum > maximum) {
    showErrors(['sweep bounds must be numbers with min <= max']);
    return;
  }
  showStatus('sweeping...');
  try {
    const resp = await runSweep({ ...request, parameter, minimum, maximum });
    renderSweepTable(el<HTMLDivElement>('sweep-result'), resp.report);
    showStatus('sweep done');
  } catch (err) {
    showErrors([err instanceof ApiError ? `server: ${err.message}` : String(err)]);
    showStatus('failed');
  }
}

async function init(): Promise<void> {
  try {
    const { presets } = await getPresets();
    const select = el<HTMLSelectElement>('preset');
    select.innerHTML = '';
    for (const name of Object.keys(presets)) {
      const option = document.createElement('option');
      option.value = name;
      option.textContent = name;
      select.appendChild(option);
    }
    select.value = DEFAULT_FORM.preset;
  } catch {
    showErrors(['could not reach the simulator service; is it running?']);
  }
  el<HTMLButtonElement>('run').addEventListener('click', () => void onRun());
  el<HTMLButtonElement>('pin').addEventListener('click', onPin);
  el<HTMLButtonElement>('clear-pin').addEventListener('click', onClearPin);
  el<HTMLButtonElement>('sweep-run').addEventListener('click', () => void onSweep());
}

void init();
