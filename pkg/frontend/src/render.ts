/**
 * Two-panel SVG figure from a parsed bands table.
 *
 * Left panel: finite-threshold extremogram reference curve (black solid),
 * mean estimate (blue solid), 95% bands (red dashed).
 * Right panel: mean statistical error (black solid) with its 95% bands
 * (red dashed).  Colors and dash styles are defaults and can be overridden.
 */

import { BandsRow } from "./csv.js";

export interface RenderStyle {
  width: number;
  height: number;
  referenceColor: string;
  meanColor: string;
  bandColor: string;
  includeLagZero: boolean;
}

export const DEFAULT_STYLE: RenderStyle = {
  width: 960,
  height: 420,
  referenceColor: "black",
  meanColor: "blue",
  bandColor: "red",
  includeLagZero: false,
};

interface Panel {
  x0: number;
  y0: number;
  w: number;
  h: number;
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

function sx(p: Panel, x: number): number {
  if (p.xMax === p.xMin) return p.x0 + p.w / 2;
  return p.x0 + ((x - p.xMin) / (p.xMax - p.xMin)) * p.w;
}

function sy(p: Panel, y: number): number {
  if (p.yMax === p.yMin) return p.y0 + p.h / 2;
  return p.y0 + p.h - ((y - p.yMin) / (p.yMax - p.yMin)) * p.h;
}

function fmt(v: number): string {
  return Number(v.toFixed(3)).toString();
}

function polyline(p: Panel, xs: number[], ys: number[], stroke: string, dashed: boolean): string {
  if (xs.length === 1) {
    return `<circle cx="${fmt(sx(p, xs[0]))}" cy="${fmt(sy(p, ys[0]))}" r="3" fill="${stroke}"/>`;
  }
  const pts = xs.map((x, i) => `${fmt(sx(p, x))},${fmt(sy(p, ys[i]))}`).join(" ");
  const dash = dashed ? ' stroke-dasharray="6,4"' : "";
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"${dash}/>`;
}

function axes(p: Panel, title: string, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${p.x0}" y="${p.y0}" width="${p.w}" height="${p.h}" fill="none" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${p.x0 + p.w / 2}" y="${p.y0 - 10}" text-anchor="middle" font-size="14">${title}</text>`,
  );
  parts.push(
    `<text x="${p.x0 + p.w / 2}" y="${p.y0 + p.h + 32}" text-anchor="middle" font-size="12">${xLabel}</text>`,
  );
  parts.push(
    `<text x="${p.x0 - 38}" y="${p.y0 + p.h / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 ${p.x0 - 38} ${p.y0 + p.h / 2})">${yLabel}</text>`,
  );
  // x ticks at integer lags (at most ~10 labels), y ticks at min/mid/max
  const span = Math.max(1, p.xMax - p.xMin);
  const step = Math.max(1, Math.ceil(span / 10));
  for (let x = Math.ceil(p.xMin); x <= p.xMax; x += step) {
    parts.push(
      `<line x1="${fmt(sx(p, x))}" y1="${p.y0 + p.h}" x2="${fmt(sx(p, x))}" y2="${p.y0 + p.h + 4}" stroke="#444"/>`,
      `<text x="${fmt(sx(p, x))}" y="${p.y0 + p.h + 16}" text-anchor="middle" font-size="10">${x}</text>`,
    );
  }
  for (const frac of [0, 0.5, 1]) {
    const y = p.yMin + frac * (p.yMax - p.yMin);
    parts.push(
      `<line x1="${p.x0 - 4}" y1="${fmt(sy(p, y))}" x2="${p.x0}" y2="${fmt(sy(p, y))}" stroke="#444"/>`,
      `<text x="${p.x0 - 6}" y="${fmt(sy(p, y) + 3)}" text-anchor="end" font-size="10">${fmt(y)}</text>`,
    );
  }
  return parts.join("\n");
}

export function renderFigure(rows: BandsRow[], style: Partial<RenderStyle> = {}): string {
  const s: RenderStyle = { ...DEFAULT_STYLE, ...style };
  const data = s.includeLagZero ? rows : rows.filter((r) => r.h > 0);
  const plotted = data.length > 0 ? data : rows;
  const lags = plotted.map((r) => r.h);
  const margin = { left: 64, right: 20, top: 36, bottom: 48, gap: 70 };
  const panelW = (s.width - margin.left * 2 - margin.right - margin.gap) / 2;
  const panelH = s.height - margin.top - margin.bottom;

  const leftVals = plotted.flatMap((r) => [r.rhoPa, r.meanRhoHat, r.bandLo, r.bandHi]);
  const rightVals = plotted.flatMap((r) => [r.meanRhoHat - r.rhoPa, r.errBandLo, r.errBandHi]);
  const pad = (lo: number, hi: number): [number, number] => {
    const d = hi - lo || 1;
    return [lo - 0.05 * d, hi + 0.05 * d];
  };
  const [lyMin, lyMax] = pad(Math.min(...leftVals), Math.max(...leftVals));
  const [ryMin, ryMax] = pad(Math.min(...rightVals), Math.max(...rightVals));
  const xMin = Math.min(...lags);
  const xMax = Math.max(...lags);

  const left: Panel = { x0: margin.left, y0: margin.top, w: panelW, h: panelH, xMin, xMax, yMin: lyMin, yMax: lyMax };
  const right: Panel = {
    x0: margin.left * 2 + panelW + margin.gap - margin.left,
    y0: margin.top,
    w: panelW,
    h: panelH,
    xMin,
    xMax,
    yMin: ryMin,
    yMax: ryMax,
  };

  const meanErr = plotted.map((r) => r.meanRhoHat - r.rhoPa);
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${s.width}" height="${s.height}" viewBox="0 0 ${s.width} ${s.height}">`,
    `<rect width="${s.width}" height="${s.height}" fill="white"/>`,
    axes(left, "Extremogram: reference, mean estimate, 95% bands", "lag h", "rho(h)"),
    polyline(left, lags, plotted.map((r) => r.bandLo), s.bandColor, true),
    polyline(left, lags, plotted.map((r) => r.bandHi), s.bandColor, true),
    polyline(left, lags, plotted.map((r) => r.rhoPa), s.referenceColor, false),
    polyline(left, lags, plotted.map((r) => r.meanRhoHat), s.meanColor, false),
    axes(right, "Statistical errors: mean and 95% bands", "lag h", "error"),
    polyline(right, lags, plotted.map((r) => r.errBandLo), s.bandColor, true),
    polyline(right, lags, plotted.map((r) => r.errBandHi), s.bandColor, true),
    polyline(right, lags, meanErr, s.referenceColor, false),
    `</svg>`,
  ];
  return parts.join("\n") + "\n";
}
