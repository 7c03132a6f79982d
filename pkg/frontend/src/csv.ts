/**
 * Strict parser for the experiment bands table.
 *
 * Expected header (exact): h,rho_pa,mean_rho_hat,band_lo,band_hi,err_band_lo,err_band_hi
 * Every parse failure reports the 1-based row and column of the offending cell.
 */

export const BANDS_HEADER = [
  "h",
  "rho_pa",
  "mean_rho_hat",
  "band_lo",
  "band_hi",
  "err_band_lo",
  "err_band_hi",
] as const;

export interface BandsRow {
  h: number;
  rhoPa: number;
  meanRhoHat: number;
  bandLo: number;
  bandHi: number;
  errBandLo: number;
  errBandHi: number;
}

export class CsvError extends Error {
  constructor(message: string, readonly row: number, readonly column: number) {
    super(`bands.csv row ${row}, column ${column}: ${message}`);
    this.name = "CsvError";
  }
}

function parseNumber(cell: string, row: number, column: number): number {
  const v = Number(cell);
  if (cell.trim() === "" || !Number.isFinite(v)) {
    throw new CsvError(`expected a finite number, got ${JSON.stringify(cell)}`, row, column);
  }
  return v;
}

export function parseBandsCsv(text: string): BandsRow[] {
  const lines = text.split(/\r?\n/).filter((l, i, arr) => !(l === "" && i === arr.length - 1));
  if (lines.length === 0) throw new CsvError("empty file", 1, 1);
  const header = lines[0].split(",");
  for (let c = 0; c < BANDS_HEADER.length; c++) {
    if (header[c] !== BANDS_HEADER[c]) {
      throw new CsvError(`expected header field ${JSON.stringify(BANDS_HEADER[c])}, got ${JSON.stringify(header[c] ?? "")}`, 1, c + 1);
    }
  }
  if (header.length !== BANDS_HEADER.length) {
    throw new CsvError(`expected ${BANDS_HEADER.length} columns, got ${header.length}`, 1, BANDS_HEADER.length + 1);
  }
  if (lines.length < 2) throw new CsvError("no data rows", 2, 1);

  const rows: BandsRow[] = [];
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== BANDS_HEADER.length) {
      throw new CsvError(`expected ${BANDS_HEADER.length} cells, got ${cells.length}`, r + 1, cells.length + 1);
    }
    const h = parseNumber(cells[0], r + 1, 1);
    if (!Number.isInteger(h) || h < 0) {
      throw new CsvError(`lag must be a nonnegative integer, got ${cells[0]}`, r + 1, 1);
    }
    const row: BandsRow = {
      h,
      rhoPa: parseNumber(cells[1], r + 1, 2),
      meanRhoHat: parseNumber(cells[2], r + 1, 3),
      bandLo: parseNumber(cells[3], r + 1, 4),
      bandHi: parseNumber(cells[4], r + 1, 5),
      errBandLo: parseNumber(cells[5], r + 1, 6),
      errBandHi: parseNumber(cells[6], r + 1, 7),
    };
    if (row.bandLo > row.meanRhoHat) {
      throw new CsvError(`band_lo ${row.bandLo} exceeds mean_rho_hat ${row.meanRhoHat}`, r + 1, 4);
    }
    if (row.meanRhoHat > row.bandHi) {
      throw new CsvError(`mean_rho_hat ${row.meanRhoHat} exceeds band_hi ${row.bandHi}`, r + 1, 5);
    }
    if (row.errBandLo > row.errBandHi) {
      throw new CsvError(`err_band_lo ${row.errBandLo} exceeds err_band_hi ${row.errBandHi}`, r + 1, 6);
    }
    rows.push(row);
  }
  rows.sort((a, b) => a.h - b.h);
  return rows;
}
