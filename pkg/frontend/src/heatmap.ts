/**
 * Faceted FNR heatmaps over the (m, n) grid, rendered as standalone SVG.
 *
 * Facets: "none" pools every cell into one figure; "model" and "p" produce
 * one figure per observed value, pooling trials across the other
 * dimensions.  The colour scale is shared across facets and anchored at 0
 * with its maximum at the CSV-wide maximum FNR (printed in the legend).
 * Grid points with no data render grey, distinct from a measured zero.
 */

import { FnrRow, maxFnr } from "./csv";

export type Facet = "none" | "model" | "p";

export interface HeatmapFigure {
  /** file stem, e.g. "overall", "model-er", "p-0.25" */
  name: string;
  title: string;
  svg: string;
}

interface Pool {
  trials: number;
  failures: number;
}

const CELL = 44;
const MARGIN_LEFT = 64;
const MARGIN_TOP = 46;
const MARGIN_BOTTOM = 56;
const MARGIN_RIGHT = 26;
const LEGEND_H = 46;

export function formatRate(value: number): string {
  return value === 0 ? "0" : value.toPrecision(3);
}

export function colorFor(fnr: number, max: number): string {
  if (max <= 0 || fnr <= 0) return "#ffffff";
  const t = Math.min(1, fnr / max);
  const r = Math.round(255 - t * (255 - 179));
  const g = Math.round(255 - t * 255);
  const b = Math.round(255 - t * 255);
  const hex = (v: number) => v.toString(16).padStart(2, "0");
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

export const MISSING_FILL = "#c8c8c8";

function facetValues(rows: FnrRow[], facet: Facet): string[] {
  if (facet === "none") return ["overall"];
  const seen = new Set<string>();
  for (const row of rows) {
    seen.add(facet === "model" ? row.model : String(row.p));
  }
  return [...seen].sort();
}

function facetRows(rows: FnrRow[], facet: Facet, value: string): FnrRow[] {
  if (facet === "none") return rows;
  return rows.filter((row) =>
    facet === "model" ? row.model === value : String(row.p) === value,
  );
}

/** Pool trials/failures per (n, m) grid point. */
export function aggregate(rows: FnrRow[]): Map<string, Pool> {
  const pools = new Map<string, Pool>();
  for (const row of rows) {
    const key = `${row.n},${row.m}`;
    const pool = pools.get(key) ?? { trials: 0, failures: 0 };
    pool.trials += row.trials;
    pool.failures += row.failures;
    pools.set(key, pool);
  }
  return pools;
}

function sortedUnique(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;");
}

function renderFigure(
  rows: FnrRow[],
  title: string,
  mValues: number[],
  nValues: number[],
  scaleMax: number,
): string {
  const pools = aggregate(rows);
  const width = MARGIN_LEFT + CELL * mValues.length + MARGIN_RIGHT;
  const height =
    MARGIN_TOP + CELL * nValues.length + MARGIN_BOTTOM + LEGEND_H;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" ` +
      `font-size="14">${esc(title)}</text>`,
  );

  // cells; n increases upward like a conventional axis
  nValues.forEach((n, yi) => {
    const y = MARGIN_TOP + (nValues.length - 1 - yi) * CELL;
    mValues.forEach((m, xi) => {
      const x = MARGIN_LEFT + xi * CELL;
      const pool = pools.get(`${n},${m}`);
      if (pool === undefined) {
        parts.push(
          `<rect x="${x}" y="${y}" width="${CELL}" height="${CELL}" ` +
            `fill="${MISSING_FILL}" stroke="#888888" data-n="${n}" ` +
            `data-m="${m}" data-missing="true"/>`,
        );
      } else {
        const fnr = pool.trials ? pool.failures / pool.trials : 0;
        parts.push(
          `<rect x="${x}" y="${y}" width="${CELL}" height="${CELL}" ` +
            `fill="${colorFor(fnr, scaleMax)}" stroke="#888888" ` +
            `data-n="${n}" data-m="${m}" data-fnr="${fnr}"/>`,
        );
      }
    });
  });

  // axis tick labels
  mValues.forEach((m, xi) => {
    const x = MARGIN_LEFT + xi * CELL + CELL / 2;
    const y = MARGIN_TOP + CELL * nValues.length + 16;
    parts.push(`<text x="${x}" y="${y}" text-anchor="middle">${m}</text>`);
  });
  nValues.forEach((n, yi) => {
    const x = MARGIN_LEFT - 8;
    const y = MARGIN_TOP + (nValues.length - 1 - yi) * CELL + CELL / 2 + 4;
    parts.push(`<text x="${x}" y="${y}" text-anchor="end">${n}</text>`);
  });
  const axisY = MARGIN_TOP + CELL * nValues.length + 34;
  parts.push(
    `<text x="${MARGIN_LEFT + (CELL * mValues.length) / 2}" y="${axisY}" ` +
      `text-anchor="middle">m (labelling sample size)</text>`,
  );
  parts.push(
    `<text x="16" y="${MARGIN_TOP + (CELL * nValues.length) / 2}" ` +
      `text-anchor="middle" transform="rotate(-90 16 ` +
      `${MARGIN_TOP + (CELL * nValues.length) / 2})">n (network size)` +
      `</text>`,
  );

  // legend: discrete ramp from 0 to the shared maximum, plus missing swatch
  const legendY = MARGIN_TOP + CELL * nValues.length + MARGIN_BOTTOM;
  const steps = 8;
  const swatch = 22;
  for (let i = 0; i < steps; i++) {
    const value = (scaleMax * i) / (steps - 1);
    parts.push(
      `<rect x="${MARGIN_LEFT + i * swatch}" y="${legendY}" ` +
        `width="${swatch}" height="12" fill="${colorFor(value, scaleMax)}" ` +
        `stroke="#888888"/>`,
    );
  }
  parts.push(
    `<text x="${MARGIN_LEFT}" y="${legendY + 26}">0</text>`,
  );
  parts.push(
    `<text x="${MARGIN_LEFT + steps * swatch}" y="${legendY + 26}" ` +
      `text-anchor="end">max ${formatRate(scaleMax)}</text>`,
  );
  const missX = MARGIN_LEFT + steps * swatch + 18;
  parts.push(
    `<rect x="${missX}" y="${legendY}" width="${swatch}" height="12" ` +
      `fill="${MISSING_FILL}" stroke="#888888"/>`,
  );
  parts.push(
    `<text x="${missX + swatch + 4}" y="${legendY + 10}">no data</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}

export function renderHeatmaps(rows: FnrRow[], facet: Facet): HeatmapFigure[] {
  const mValues = sortedUnique(rows.map((row) => row.m));
  const nValues = sortedUnique(rows.map((row) => row.n));
  const scaleMax = maxFnr(rows);
  return facetValues(rows, facet).map((value) => {
    const subset = facetRows(rows, facet, value);
    const title =
      facet === "none"
        ? "False negative rate (all cells)"
        : `False negative rate (${facet} = ${value})`;
    const name = facet === "none" ? "overall" : `${facet}-${value}`;
    return { name, title, svg: renderFigure(subset, title, mValues, nValues, scaleMax) };
  });
}
