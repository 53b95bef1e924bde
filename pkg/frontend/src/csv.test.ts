import { describe, expect, it } from "vitest";

import { maxFnr, parseFnrCsv } from "./csv";

const GOOD = `n,m,model,p,trials,failures,fnr
10,10,er,0.1,3200,0,0
10,20,er,0.1,3200,16,0.005
20,10,ws,0.25,6400,32,0.005
`;

describe("parseFnrCsv", () => {
  it("parses a well-formed file", () => {
    const rows = parseFnrCsv(GOOD);
    expect(rows).toHaveLength(3);
    expect(rows[0]).toEqual({
      n: 10, m: 10, model: "er", p: 0.1, trials: 3200, failures: 0, fnr: 0,
    });
    expect(rows[1].fnr).toBeCloseTo(0.005);
  });

  it("rejects a wrong header", () => {
    expect(() => parseFnrCsv("a,b,c\n1,2,3\n")).toThrow(/schema mismatch/);
  });

  it("rejects a short row", () => {
    expect(() => parseFnrCsv("n,m,model,p,trials,failures,fnr\n1,2,er\n"))
      .toThrow(/expected 7 fields/);
  });

  it("rejects non-numeric fields", () => {
    expect(() =>
      parseFnrCsv("n,m,model,p,trials,failures,fnr\nx,10,er,0.1,5,0,0\n"),
    ).toThrow(/not a number/);
  });

  it("rejects impossible counts", () => {
    expect(() =>
      parseFnrCsv("n,m,model,p,trials,failures,fnr\n10,10,er,0.1,5,9,0.5\n"),
    ).toThrow(/failures/);
  });

  it("rejects an empty file", () => {
    expect(() => parseFnrCsv("")).toThrow(/empty/);
    expect(() => parseFnrCsv("n,m,model,p,trials,failures,fnr\n"))
      .toThrow(/no data rows/);
  });
});

describe("maxFnr", () => {
  it("finds the file-wide maximum", () => {
    expect(maxFnr(parseFnrCsv(GOOD))).toBeCloseTo(0.005);
  });
});
