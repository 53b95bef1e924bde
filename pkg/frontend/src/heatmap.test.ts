import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import { parseFnrCsv } from "./csv";
import {
  MISSING_FILL,
  aggregate,
  colorFor,
  formatRate,
  renderHeatmaps,
} from "./heatmap";
import { main, parseArgs, run } from "./cli";

const CSV = `n,m,model,p,trials,failures,fnr
10,10,er,0.1,1000,0,0
10,10,er,0.5,1000,10,0.01
10,10,ws,0.1,1000,40,0.04
10,20,er,0.1,1000,0,0
10,20,ws,0.1,1000,0,0
20,10,er,0.1,2000,0,0
20,10,ws,0.1,2000,0,0
20,20,er,0.1,2000,0,0
20,20,ws,0.1,2000,0,0
`;
// note: (10,10) for ws has no p=0.5 row and er has two p rows; the ws facet
// is missing nothing, but a facet on p=0.5 covers only (10,10)

describe("aggregate", () => {
  it("pools trials and failures per grid point", () => {
    const pools = aggregate(parseFnrCsv(CSV));
    expect(pools.get("10,10")).toEqual({ trials: 3000, failures: 50 });
    expect(pools.get("20,20")).toEqual({ trials: 4000, failures: 0 });
  });
});

describe("colour scale", () => {
  it("anchors zero at white and the maximum at dark red", () => {
    expect(colorFor(0, 0.05)).toBe("#ffffff");
    expect(colorFor(0.05, 0.05)).toBe("#b30000");
  });

  it("keeps the missing fill distinct from every scale colour", () => {
    for (let i = 0; i <= 10; i++) {
      expect(colorFor((0.04 * i) / 10, 0.04)).not.toBe(MISSING_FILL);
    }
  });
});

describe("renderHeatmaps", () => {
  const rows = parseFnrCsv(CSV);

  it("produces one figure per facet value", () => {
    expect(renderHeatmaps(rows, "none").map((f) => f.name))
      .toEqual(["overall"]);
    expect(renderHeatmaps(rows, "model").map((f) => f.name))
      .toEqual(["model-er", "model-ws"]);
    expect(renderHeatmaps(rows, "p").map((f) => f.name))
      .toEqual(["p-0.1", "p-0.5"]);
  });

  it("labels the full axis extents on every facet", () => {
    for (const figure of renderHeatmaps(rows, "model")) {
      for (const value of [10, 20]) {
        expect(figure.svg).toContain(`>${value}</text>`);
      }
      expect(figure.svg).toContain("m (labelling sample size)");
      expect(figure.svg).toContain("n (network size)");
    }
  });

  it("prints the CSV-wide maximum in the legend of every facet", () => {
    const label = `max ${formatRate(0.04)}`;
    for (const facet of ["none", "model", "p"] as const) {
      for (const figure of renderHeatmaps(rows, facet)) {
        expect(figure.svg).toContain(label);
      }
    }
  });

  it("renders missing cells distinctly from measured zeros", () => {
    const byName = new Map(
      renderHeatmaps(rows, "p").map((f) => [f.name, f.svg]),
    );
    const sparse = byName.get("p-0.5")!;
    // only (10,10) was measured at p=0.5; the other three cells are gaps
    expect(sparse.match(/data-missing="true"/g)).toHaveLength(3);
    expect(sparse).toContain(`data-n="10" data-m="10" data-fnr="0.01"`);
    const dense = byName.get("p-0.1")!;
    expect(dense).not.toContain("data-missing");
    expect(dense).toContain(`fill="#ffffff"`); // fnr 0 cells stay on-scale
  });
});

describe("cli", () => {
  it("writes one SVG per facet value", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "fnrmaps-"));
    const csvPath = path.join(dir, "fnr.csv");
    fs.writeFileSync(csvPath, CSV);
    const outDir = path.join(dir, "figs");
    const files = run(parseArgs(["--csv", csvPath, "--facet", "model",
                                 "--out", outDir]));
    expect(files).toHaveLength(2);
    for (const file of files) {
      expect(fs.readFileSync(file, "utf-8")).toContain("<svg");
    }
  });

  it("reports schema mismatches as errors", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "fnrmaps-"));
    const csvPath = path.join(dir, "bad.csv");
    fs.writeFileSync(csvPath, "nope\n1,2\n");
    expect(main(["--csv", csvPath, "--facet", "none", "--out",
                 path.join(dir, "figs")])).toBe(2);
  });

  it("rejects unknown facets", () => {
    expect(() => parseArgs(["--csv", "x", "--facet", "zzz", "--out", "y"]))
      .toThrow(/unknown facet/);
  });
});
