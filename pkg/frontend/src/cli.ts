/**
 * CLI: render FNR heatmaps from a grid CSV.
 *
 *   node dist/cli.js --csv fnr.csv --facet model --out figs/
 */

import * as fs from "fs";
import * as path from "path";

import { parseFnrCsv } from "./csv";
import { Facet, renderHeatmaps } from "./heatmap";

interface Args {
  csv: string;
  facet: Facet;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  let csv: string | undefined;
  let out: string | undefined;
  let facet: string = "none";
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--csv":
        csv = argv[++i];
        break;
      case "--facet":
        facet = argv[++i];
        break;
      case "--out":
        out = argv[++i];
        break;
      default:
        throw new Error(`unknown argument: ${argv[i]}`);
    }
  }
  if (!csv || !out) {
    throw new Error("usage: --csv fnr.csv --facet none|model|p --out figs/");
  }
  if (facet !== "none" && facet !== "model" && facet !== "p") {
    throw new Error(`unknown facet: ${facet} (expected none, model or p)`);
  }
  return { csv, facet, out };
}

export function run(args: Args): string[] {
  const rows = parseFnrCsv(fs.readFileSync(args.csv, "utf-8"));
  fs.mkdirSync(args.out, { recursive: true });
  const written: string[] = [];
  for (const figure of renderHeatmaps(rows, args.facet)) {
    const file = path.join(args.out, `${figure.name}.svg`);
    fs.writeFileSync(file, figure.svg);
    written.push(file);
  }
  return written;
}

export function main(argv: string[]): number {
  try {
    const files = run(parseArgs(argv));
    for (const file of files) console.log(`wrote ${file}`);
    return 0;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
