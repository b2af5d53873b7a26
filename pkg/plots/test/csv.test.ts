import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { NoDataError, SchemaError, parseAggregate, parseResults } from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");

describe("results parser", () => {
  it("parses the shipped fixture", () => {
    const rows = parseResults(readFileSync(join(FIXTURES, "results.csv"), "utf-8"));
    expect(rows.length).toBeGreaterThan(0);
    const algorithms = new Set(rows.map((r) => r.algorithm));
    expect(algorithms).toEqual(new Set(["pqa", "ds", "qls", "hill", "cpqa"]));
    for (const row of rows) {
      expect(row.AR).toBeLessThanOrEqual(1 + 1e-9);
      expect(row.AR).toBeCloseTo(row.F / row.F_max, 9);
    }
  });

  it("names the missing column", () => {
    expect(() => parseResults("a,b\n1,2\n")).toThrowError(SchemaError);
    expect(() => parseResults("a,b\n1,2\n")).toThrowError(/missing column: algorithm/);
  });

  it("rejects ragged rows and bad numbers", () => {
    const fixture = readFileSync(join(FIXTURES, "results.csv"), "utf-8");
    const lines = fixture.split("\n");
    expect(() => parseResults(lines[0] + "\nonly,three,cells\n")).toThrowError(
      /row 2: expected/,
    );
    const broken = lines[1].replace(/^(\w+),(\d+)/, "$1,oops");
    expect(() => parseResults(lines[0] + "\n" + broken + "\n")).toThrowError(
      /column graph_id/,
    );
  });

  it("rejects empty input", () => {
    expect(() => parseResults("")).toThrowError(SchemaError);
  });
});

describe("aggregate parser", () => {
  it("parses the shipped fixture with blank cells as null", () => {
    const rows = parseAggregate(readFileSync(join(FIXTURES, "aggregate.csv"), "utf-8"));
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) {
      expect(row.target_ar).toBeGreaterThan(0);
      if (row.chosen_depth === null) {
        expect(row.expected_runs).toBeNull();
      }
    }
  });

  it("names the missing column", () => {
    expect(() => parseAggregate("algorithm,graph_type\na,b\n")).toThrowError(
      /missing column: target_ar/,
    );
  });
});

describe("error types", () => {
  it("distinguishes schema errors from empty-filter errors", () => {
    expect(new SchemaError("x").name).toBe("SchemaError");
    expect(new NoDataError("x").name).toBe("NoDataError");
  });
});
