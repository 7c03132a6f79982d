import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseBandsCsv } from "../src/csv.js";
import { renderFigure } from "../src/render.js";

const fixture = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "bands_fig1.csv");
const rows = parseBandsCsv(readFileSync(fixture, "utf-8"));

describe("renderFigure", () => {
  it("emits a two-panel SVG with all four left-panel curves", () => {
    const svg = renderFigure(rows);
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect((svg.match(/<rect[^>]*stroke="#444"/g) ?? []).length).toBe(2);
    // 4 curves left + 3 curves right
    expect((svg.match(/<polyline/g) ?? []).length).toBe(7);
    expect(svg).toContain('stroke="blue"');
    expect(svg).toContain('stroke="red"');
    expect(svg).toContain('stroke-dasharray');
  });

  it("excludes lag 0 by default and includes it on request", () => {
    const withoutZero = renderFigure(rows);
    const withZero = renderFigure(rows, { includeLagZero: true });
    // lag-0 tick label only appears when lag 0 is plotted
    expect(withoutZero).not.toMatch(/font-size="10">0</);
    expect(withZero).toMatch(/font-size="10">0</);
  });

  it("is deterministic across repeated renders", () => {
    expect(renderFigure(rows)).toBe(renderFigure(rows));
  });

  it("renders a single data point as markers", () => {
    const one = rows.filter((r) => r.h === 1);
    const svg = renderFigure(one);
    expect(svg).toContain("<circle");
    expect(svg).not.toContain("<polyline");
  });

  it("respects custom dimensions", () => {
    const svg = renderFigure(rows, { width: 1920, height: 840 });
    expect(svg).toContain('width="1920" height="840"');
  });
});
