import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CsvError, parseBandsCsv } from "../src/csv.js";

const fixture = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "bands_fig1.csv");
const fig1 = readFileSync(fixture, "utf-8");

describe("parseBandsCsv", () => {
  it("parses the reference experiment output", () => {
    const rows = parseBandsCsv(fig1);
    expect(rows).toHaveLength(21);
    expect(rows[0].h).toBe(0);
    expect(rows[0].rhoPa).toBe(1);
    expect(rows[1].h).toBe(1);
    expect(rows[1].rhoPa).toBeCloseTo(0.5, 12);
    expect(rows[1].meanRhoHat).toBeCloseTo(0.5, 1);
    for (const r of rows) {
      expect(r.bandLo).toBeLessThanOrEqual(r.meanRhoHat);
      expect(r.meanRhoHat).toBeLessThanOrEqual(r.bandHi);
    }
  });

  it("sorts rows by lag", () => {
    const text = "h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi\n" +
      "2,0.25,0.24,0.2,0.3,-0.05,0.05\n" +
      "1,0.5,0.49,0.4,0.6,-0.1,0.1\n";
    const rows = parseBandsCsv(text);
    expect(rows.map((r) => r.h)).toEqual([1, 2]);
  });

  it("rejects a wrong header with row and column", () => {
    const bad = fig1.replace("mean_rho_hat", "mean_rho");
    expect(() => parseBandsCsv(bad)).toThrowError(CsvError);
    try {
      parseBandsCsv(bad);
    } catch (e) {
      const err = e as CsvError;
      expect(err.row).toBe(1);
      expect(err.column).toBe(3);
    }
  });

  it("rejects a corrupted numeric cell with its location", () => {
    const lines = fig1.split("\n");
    const cells = lines[3].split(",");
    cells[2] = "oops";
    lines[3] = cells.join(",");
    try {
      parseBandsCsv(lines.join("\n"));
      expect.unreachable("parse should have failed");
    } catch (e) {
      const err = e as CsvError;
      expect(err).toBeInstanceOf(CsvError);
      expect(err.row).toBe(4);
      expect(err.column).toBe(3);
      expect(err.message).toContain("row 4, column 3");
    }
  });

  it("rejects rows with the wrong cell count", () => {
    const text = "h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi\n1,0.5,0.49\n";
    expect(() => parseBandsCsv(text)).toThrowError(/expected 7 cells/);
  });

  it("rejects inverted bands", () => {
    const text = "h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi\n" +
      "1,0.5,0.49,0.6,0.4,-0.1,0.1\n";
    expect(() => parseBandsCsv(text)).toThrowError(/band_lo/);
  });

  it("rejects non-integer and negative lags", () => {
    const head = "h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi\n";
    expect(() => parseBandsCsv(head + "1.5,0.5,0.49,0.4,0.6,-0.1,0.1\n")).toThrowError(CsvError);
    expect(() => parseBandsCsv(head + "-1,0.5,0.49,0.4,0.6,-0.1,0.1\n")).toThrowError(CsvError);
  });

  it("rejects empty input and header-only input", () => {
    expect(() => parseBandsCsv("")).toThrowError(CsvError);
    expect(() =>
      parseBandsCsv("h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi\n"),
    ).toThrowError(/no data rows/);
  });
});
