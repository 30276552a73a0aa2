/** SVG chart construction: a log-scale horizon chart with the trend
 * overlay and historical scatter, and an editable log-scale compute
 * path. Everything here is coordinate mapping over server-supplied
 * numbers; the functions return plain strings/records so tests can run
 * without a DOM.
 */

import { minutesTickLabel } from "./format.js";
import type { DefaultsResponse, ForecastResponse, PathKnot } from "./types.js";

export interface Viewport {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_VIEWPORT: Viewport = {
  width: 760,
  height: 380,
  margin: { top: 16, right: 24, bottom: 36, left: 86 },
};

export interface LogScale {
  domainLo: number;
  domainHi: number;
  rangeLo: number;
  rangeHi: number;
}

export function makeLinearScale(
  lo: number, hi: number, rangeLo: number, rangeHi: number,
): (x: number) => number {
  const span = hi - lo || 1;
  return (x: number) => rangeLo + ((x - lo) / span) * (rangeHi - rangeLo);
}

export function makeLogScale(
  lo: number, hi: number, rangeLo: number, rangeHi: number,
): { scale: (v: number) => number; invert: (px: number) => number } {
  const logLo = Math.log10(lo);
  const logHi = Math.log10(hi);
  const span = logHi - logLo || 1;
  return {
    scale: (v: number) =>
      rangeLo + ((Math.log10(v) - logLo) / span) * (rangeHi - rangeLo),
    invert: (px: number) =>
      10 ** (logLo + ((px - rangeLo) / (rangeHi - rangeLo || 1)) * span),
  };
}

export function polylinePoints(
  xs: number[], ys: number[],
): string {
  return xs.map((x, i) => `${x.toFixed(2)},${(ys[i] ?? 0).toFixed(2)}`).join(" ");
}

/** Decade ticks covering [lo, hi] on a log axis. */
export function decadeTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); 10 ** e <= hi * (1 + 1e-12); e++) {
    out.push(10 ** e);
  }
  return out;
}

export function horizonChartSvg(
  response: ForecastResponse,
  defaults: DefaultsResponse | null,
  reliability: string,
  vp: Viewport = DEFAULT_VIEWPORT,
): string {
  const { width, height, margin } = vp;
  const points = response.horizon_path;
  const trend = response.trend_path;
  const history = (defaults?.history.horizons ?? []).filter(
    (h) => h.reliability === reliability,
  );
  const years = [
    ...points.map((p) => p.year),
    ...history.map((h) => h.year),
  ];
  const minutes = [
    ...points.map((p) => p.minutes),
    ...trend.map((p) => p.minutes),
    ...history.map((h) => h.minutes),
  ];
  const x = makeLinearScale(
    Math.min(...years), Math.max(...years), margin.left, width - margin.right,
  );
  const y = makeLogScale(
    Math.min(...minutes), Math.max(...minutes),
    height - margin.bottom, margin.top,
  ).scale;

  const forecastLine = polylinePoints(
    points.map((p) => x(p.year)), points.map((p) => y(p.minutes)),
  );
  const trendLine = polylinePoints(
    trend.map((p) => x(p.year)), trend.map((p) => y(p.minutes)),
  );
  const scatter = history
    .map(
      (h) =>
        `<circle cx="${x(h.year).toFixed(2)}" cy="${y(h.minutes).toFixed(2)}"` +
        ` r="3" class="history" data-model="${h.model_id}"/>`,
    )
    .join("");
  const ticks = decadeTicks(Math.min(...minutes), Math.max(...minutes))
    .map((v) => {
      const py = y(v).toFixed(2);
      return (
        `<line x1="${margin.left}" x2="${width - margin.right}" y1="${py}" ` +
        `y2="${py}" class="grid"/>` +
        `<text x="${margin.left - 8}" y="${py}" class="tick" ` +
        `text-anchor="end" dominant-baseline="middle">${minutesTickLabel(v)}</text>`
      );
    })
    .join("");
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="horizon-chart">` +
    ticks +
    `<polyline points="${trendLine}" class="trend-line" fill="none"/>` +
    `<polyline points="${forecastLine}" class="forecast-line" fill="none"/>` +
    scatter +
    "</svg>"
  );
}

export interface KnotPlacement {
  index: number;
  cx: number;
  cy: number;
  knot: PathKnot;
}

export function placeKnots(
  knots: PathKnot[],
  vp: Viewport = DEFAULT_VIEWPORT,
): { placements: KnotPlacement[]; invertValue: (py: number) => number } {
  const { width, height, margin } = vp;
  const years = knots.map((k) => k.year);
  const values = knots.map((k) => k.value);
  const x = makeLinearScale(
    Math.min(...years), Math.max(...years), margin.left, width - margin.right,
  );
  const { scale: y, invert } = makeLogScale(
    Math.min(...values) / 3, Math.max(...values) * 3,
    height - margin.bottom, margin.top,
  );
  return {
    placements: knots.map((k, index) => ({
      index,
      cx: x(k.year),
      cy: y(k.value),
      knot: k,
    })),
    invertValue: invert,
  };
}

export function pathEditorSvg(
  knots: PathKnot[],
  vp: Viewport = DEFAULT_VIEWPORT,
): string {
  const { placements } = placeKnots(knots, vp);
  const line = polylinePoints(
    placements.map((p) => p.cx), placements.map((p) => p.cy),
  );
  const handles = placements
    .map(
      (p) =>
        `<circle cx="${p.cx.toFixed(2)}" cy="${p.cy.toFixed(2)}" r="6" ` +
        `class="knot" data-index="${p.index}"/>`,
    )
    .join("");
  return (
    `<svg viewBox="0 0 ${vp.width} ${vp.height}" class="path-editor">` +
    `<polyline points="${line}" class="path-line" fill="none"/>` +
    handles +
    "</svg>"
  );
}
