/**
 * Parsing and validation of the FNR grid CSV
 * (schema: n,m,model,p,trials,failures,fnr; one row per grid cell).
 */

export interface FnrRow {
  n: number;
  m: number;
  model: string;
  p: number;
  trials: number;
  failures: number;
  fnr: number;
}

export const EXPECTED_HEADER = "n,m,model,p,trials,failures,fnr";

function fail(line: number, message: string): never {
  throw new Error(`FNR CSV schema mismatch at line ${line}: ${message}`);
}

function num(line: number, field: string, raw: string): number {
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    fail(line, `field "${field}" is not a number (got "${raw}")`);
  }
  return value;
}

function int(line: number, field: string, raw: string): number {
  const value = num(line, field, raw);
  if (!Number.isInteger(value)) {
    fail(line, `field "${field}" must be an integer (got "${raw}")`);
  }
  return value;
}

export function parseFnrCsv(text: string): FnrRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) {
    throw new Error("FNR CSV schema mismatch: file is empty");
  }
  if (lines[0].trim() !== EXPECTED_HEADER) {
    throw new Error(
      `FNR CSV schema mismatch: expected header "${EXPECTED_HEADER}", ` +
        `got "${lines[0].trim()}"`,
    );
  }
  const rows: FnrRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 7) {
      fail(i + 1, `expected 7 fields, got ${parts.length}`);
    }
    const row: FnrRow = {
      n: int(i + 1, "n", parts[0]),
      m: int(i + 1, "m", parts[1]),
      model: parts[2].trim(),
      p: num(i + 1, "p", parts[3]),
      trials: int(i + 1, "trials", parts[4]),
      failures: int(i + 1, "failures", parts[5]),
      fnr: num(i + 1, "fnr", parts[6]),
    };
    if (row.model === "") fail(i + 1, "model must be non-empty");
    if (row.trials < 0 || row.failures < 0 || row.failures > row.trials) {
      fail(i + 1, "failures must lie in [0, trials]");
    }
    if (row.fnr < 0 || row.fnr > 1) fail(i + 1, "fnr must lie in [0, 1]");
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new Error("FNR CSV schema mismatch: no data rows");
  }
  return rows;
}

/** Largest observed FNR across the whole file (anchors the colour scale). */
export function maxFnr(rows: FnrRow[]): number {
  return rows.reduce((acc, row) => Math.max(acc, row.fnr), 0);
}
