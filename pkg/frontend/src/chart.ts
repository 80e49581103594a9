// Canvas line charts.  All geometry is computed by pure functions so the
// layout is testable without a DOM; draw() is a thin painter over them.

import type { TrajectoryPayload } from './types.js';

export interface ChartLayout {
  width: number;
  height: number;
  padLeft: number;
  padRight: number;
  padTop: number;
  padBottom: number;
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 860,
  height: 220,
  padLeft: 52,
  padRight: 12,
  padTop: 14,
  padBottom: 26,
};

export interface Scale {
  min: number;
  max: number;
  toPx(value: number): number;
}

export function linearScale(min: number, max: number, pxLo: number, pxHi: number): Scale {
  const span = max - min || 1;
  return {
    min,
    max,
    toPx: (value: number) => pxLo + ((value - min) / span) * (pxHi - pxLo),
  };
}

export function niceTicks(min: number, max: number, target = 5): number[] {
  const span = max - min || 1;
  const rawStep = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= target + 1) ?? mag * 10;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + 1e-9; v += step) {
    ticks.push(Number(v.toFixed(10)));
  }
  return ticks;
}

export interface BandRect {
  x0: number;
  x1: number;
  startH: number;
  endH: number;
}

// Activation intervals -> horizontal band rectangles in pixel space,
// clipped to the plotted time range.
export function activationBands(
  intervals: [number, number][],
  xScale: Scale,
  pxLo: number,
  pxHi: number,
): BandRect[] {
  const bands: BandRect[] = [];
  for (const [startH, endH] of intervals) {
    const x0 = Math.max(pxLo, xScale.toPx(startH));
    const x1 = Math.min(pxHi, xScale.toPx(endH));
    if (x1 > x0) bands.push({ x0, x1, startH, endH });
  }
  return bands;
}

export function seriesExtent(values: number[], threshold?: number): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (threshold !== undefined) {
    lo = Math.min(lo, threshold);
    hi = Math.max(hi, threshold);
  }
  const pad = (hi - lo || 1) * 0.08;
  return [Math.max(0, lo - pad), hi + pad];
}

export interface ChartSpec {
  title: string;
  series: string;
  color: string;
  threshold?: number; // horizontal trigger line, if any
  thresholdLabel?: string;
}

export function toPolyline(
  times: number[],
  values: number[],
  xScale: Scale,
  yScale: Scale,
): [number, number][] {
  return times.map((t, i) => [xScale.toPx(t), yScale.toPx(values[i])]);
}

export function drawChart(
  canvas: HTMLCanvasElement,
  traj: TrajectoryPayload,
  spec: ChartSpec,
  compare?: TrajectoryPayload,
  layout: ChartLayout = DEFAULT_LAYOUT,
): void {
  canvas.width = layout.width;
  canvas.height = layout.height;
  const ctx = canvas.getContext('2d');
  if (!ctx) return;
  const { padLeft, padRight, padTop, padBottom, width, height } = layout;
  const plotX0 = padLeft;
  const plotX1 = width - padRight;
  const plotY0 = height - padBottom;
  const plotY1 = padTop;

  const times = traj.times;
  const values = traj.series[spec.series];
  const allValues = compare ? values.concat(compare.series[spec.series]) : values;
  const [yLo, yHi] = seriesExtent(allValues, spec.threshold);
  const xScale = linearScale(times[0], times[times.length - 1], plotX0, plotX1);
  const yScale = linearScale(yLo, yHi, plotY0, plotY1);

  ctx.clearRect(0, 0, width, height);

  // activation bands behind everything else
  ctx.fillStyle = 'rgba(220, 80, 60, 0.15)';
  for (const band of activationBands(traj.activation_intervals, xScale, plotX0, plotX1)) {
    ctx.fillRect(band.x0, plotY1, band.x1 - band.x0, plotY0 - plotY1);
  }

  // axes and ticks
  ctx.strokeStyle = '#999';
  ctx.fillStyle = '#555';
  ctx.font = '11px sans-serif';
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(plotX0, plotY1);
  ctx.lineTo(plotX0, plotY0);
  ctx.lineTo(plotX1, plotY0);
  ctx.stroke();
  for (const tick of niceTicks(times[0], times[times.length - 1], 8)) {
    const x = xScale.toPx(tick);
    ctx.fillText(String(tick), x - 8, plotY0 + 14);
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const y = yScale.toPx(tick);
    ctx.fillText(String(tick), 6, y + 4);
  }

  // trigger line
  if (spec.threshold !== undefined) {
    const y = yScale.toPx(spec.threshold);
    ctx.strokeStyle = '#c0392b';
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.moveTo(plotX0, y);
    ctx.lineTo(plotX1, y);
    ctx.stroke();
    ctx.setLineDash([]);
    if (spec.thresholdLabel) {
      ctx.fillStyle = '#c0392b';
      ctx.fillText(spec.thresholdLabel, plotX1 - 120, y - 4);
    }
  }

  // comparison overlay first, main series on top
  if (compare) {
    strokePolyline(ctx, toPolyline(compare.times, compare.series[spec.series], xScale, yScale), '#aaa');
  }
  strokePolyline(ctx, toPolyline(times, values, xScale, yScale), spec.color);

  ctx.fillStyle = '#333';
  ctx.font = 'bold 12px sans-serif';
  ctx.fillText(spec.title, padLeft, 11);
}

function strokePolyline(
  ctx: CanvasRenderingContext2D,
  points: [number, number][],
  color: string,
): void {
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  points.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
  ctx.stroke();
}
