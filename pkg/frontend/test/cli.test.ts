import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it, vi } from "vitest";

import { run } from "../src/cli.js";

const fixture = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "bands_fig1.csv");

function tmp(name: string): string {
  return join(mkdtempSync(join(tmpdir(), "plots-")), name);
}

describe("cli run", () => {
  it("renders the reference bands table to an SVG", () => {
    const out = tmp("fig1.svg");
    const code = run(["render", "--in", fixture, "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf-8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("</svg>");
  });

  it("scales dimensions with --dpi", () => {
    const out = tmp("fig1-hi.svg");
    expect(run(["render", "--in", fixture, "--out", out, "--dpi", "192"])).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain('width="1920" height="840"');
  });

  it("exits nonzero on a corrupted CSV and reports the location", () => {
    const bad = tmp("bad.csv");
    const lines = readFileSync(fixture, "utf-8").split("\n");
    lines[2] = lines[2].replace(/^1,/, "1,not-a-number,").split(",").slice(0, 7).join(",");
    writeFileSync(bad, lines.join("\n"));
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = run(["render", "--in", bad, "--out", tmp("never.svg")]);
    expect(code).toBe(1);
    expect(err.mock.calls[0][0]).toMatch(/row 3, column 2/);
    err.mockRestore();
  });

  it("exits nonzero on a missing input file", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(run(["render", "--in", "/nonexistent/bands.csv", "--out", tmp("x.svg")])).toBe(1);
    err.mockRestore();
  });

  it("rejects missing flags and bad dpi", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(run(["render", "--in", fixture])).toBe(1);
    expect(run(["render", "--in", fixture, "--out", tmp("x.svg"), "--dpi", "0"])).toBe(1);
    expect(run(["plot"])).toBe(1);
    err.mockRestore();
  });
});
