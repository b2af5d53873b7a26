/**
 * Figure renderers over the benchmark CSVs.
 *
 * ar_curves      — per-algorithm best/average approximation ratio against
 *                  circuit depth (classical baselines as dotted reference
 *                  lines), from a results CSV.
 * resource_bars  — grouped bars of total resource consumption per target
 *                  ratio, one image per metric (iterations, runtime,
 *                  qubits, gates), from an aggregate CSV.
 * runs_bars      — grouped bars of the expected optimization-run count per
 *                  target ratio, from an aggregate CSV.
 */

import { readFileSync, writeFileSync } from "node:fs";

import {
  AggregateRow,
  NoDataError,
  ResultRow,
  parseAggregate,
  parseResults,
} from "./csv.js";
import {
  DEFAULT_MARGIN,
  SvgBuilder,
  colorFor,
  formatTick,
  linearScale,
  linearTicks,
  logScale,
  logTicks,
} from "./svg.js";

export const FIGURE_KINDS = ["ar_curves", "resource_bars", "runs_bars"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  graphType?: string;
  out: string;
}

const CLASSICAL = new Set(["hill", "cpqa"]);

const WIDTH = 640;
const HEIGHT = 420;

function mean(values: number[]): number {
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function uniqueSorted<T>(values: T[]): T[] {
  return [...new Set(values)].sort();
}

function filterByType<T extends { graph_type: string }>(
  rows: T[],
  graphType: string | undefined,
  context: string,
): T[] {
  const kept = graphType ? rows.filter((r) => r.graph_type === graphType) : rows;
  if (kept.length === 0) {
    throw new NoDataError(
      `no data${graphType ? ` for graph type "${graphType}"` : ""} in ${context}`,
    );
  }
  return kept;
}

interface ArSeries {
  algorithm: string;
  oar: [number, number][]; // (depth, mean over graphs of per-graph best AR)
  aar: [number, number][];
}

export function arSeries(rows: ResultRow[]): ArSeries[] {
  const algorithms = uniqueSorted(rows.map((r) => r.algorithm));
  return algorithms.map((algorithm) => {
    const mine = rows.filter((r) => r.algorithm === algorithm);
    const depths = uniqueSorted(mine.map((r) => r.p));
    const oar: [number, number][] = [];
    const aar: [number, number][] = [];
    for (const p of depths) {
      const atDepth = mine.filter((r) => r.p === p);
      const graphs = uniqueSorted(atDepth.map((r) => r.graph_id));
      const bests = graphs.map((g) =>
        Math.max(...atDepth.filter((r) => r.graph_id === g).map((r) => r.AR)),
      );
      const means = graphs.map((g) =>
        mean(atDepth.filter((r) => r.graph_id === g).map((r) => r.AR)),
      );
      oar.push([p, mean(bests)]);
      aar.push([p, mean(means)]);
    }
    return { algorithm, oar, aar };
  });
}

function renderArCurves(spec: FigureSpec): string {
  const rows = filterByType(
    parseResults(readFileSync(spec.input, "utf-8")).filter(
      (r) => r.exit_flag !== "error",
    ),
    spec.graphType,
    spec.input,
  );
  const series = arSeries(rows);
  const depths = uniqueSorted(rows.map((r) => r.p));

  const svg = new SvgBuilder(WIDTH, HEIGHT);
  const m = DEFAULT_MARGIN;
  const x = linearScale(
    [Math.min(...depths), Math.max(...depths)],
    [m.left, WIDTH - m.right],
  );
  const allValues = series.flatMap((s) => [...s.oar, ...s.aar]).map(([, v]) => v);
  const lo = Math.max(0, Math.min(...allValues) - 0.05);
  const y = linearScale([lo, 1.0], [HEIGHT - m.bottom, m.top]);

  for (const tick of linearTicks(lo, 1.0, 6)) {
    svg.line(m.left, y(tick), WIDTH - m.right, y(tick), "#ddd");
    svg.text(m.left - 8, y(tick) + 4, formatTick(tick), { anchor: "end", size: 11 });
  }
  for (const p of depths) {
    svg.line(x(p), HEIGHT - m.bottom, x(p), HEIGHT - m.bottom + 5, "#333");
    svg.text(x(p), HEIGHT - m.bottom + 20, String(p), { anchor: "middle", size: 11 });
  }
  svg.line(m.left, HEIGHT - m.bottom, WIDTH - m.right, HEIGHT - m.bottom, "#333");
  svg.line(m.left, m.top, m.left, HEIGHT - m.bottom, "#333");
  svg.text(WIDTH / 2, HEIGHT - 14, "circuit depth p", { anchor: "middle" });
  svg.text(18, HEIGHT / 2, "approximation ratio", {
    anchor: "middle",
    rotate: -90,
  });
  const title = `approximation ratio vs depth${spec.graphType ? ` (${spec.graphType})` : ""}`;
  svg.text(WIDTH / 2, 24, title, { anchor: "middle", size: 14 });

  series.forEach((s, i) => {
    const color = colorFor(s.algorithm, i);
    if (CLASSICAL.has(s.algorithm)) {
      // depth-independent reference: dotted line at the pooled level
      const level = mean(s.oar.map(([, v]) => v));
      svg.line(m.left, y(level), WIDTH - m.right, y(level), color, 2, "2,4");
      const avgLevel = mean(s.aar.map(([, v]) => v));
      svg.line(m.left, y(avgLevel), WIDTH - m.right, y(avgLevel), color, 1.2, "2,4");
      return;
    }
    svg.polyline(s.oar.map(([p, v]) => [x(p), y(v)]), color, 2.5);
    s.oar.forEach(([p, v]) => svg.circle(x(p), y(v), 3, color));
    svg.polyline(s.aar.map(([p, v]) => [x(p), y(v)]), color, 1.5, "6,4");
  });

  svg.legend(
    series.map((s, i) => ({
      label: s.algorithm,
      color: colorFor(s.algorithm, i),
      dash: CLASSICAL.has(s.algorithm) ? "2,4" : undefined,
    })),
    WIDTH - m.right - 110,
    m.top + 8,
  );
  svg.text(m.left + 6, m.top + 10, "solid: best ratio, dashed: average", {
    size: 11,
    fill: "#555",
  });
  return svg.toString();
}

export const RESOURCE_METRICS = [
  { column: "total_iterations", label: "total iterations", suffix: "iterations" },
  { column: "total_runtime_s", label: "total runtime (s)", suffix: "runtime" },
  { column: "total_qubits", label: "total qubits", suffix: "qubits" },
  { column: "total_gates", label: "total multi-controlled gates", suffix: "gates" },
] as const;

function renderBars(
  rows: AggregateRow[],
  column: "total_iterations" | "total_runtime_s" | "total_qubits" | "total_gates" | "expected_runs",
  label: string,
  graphType: string | undefined,
): string {
  const targets = uniqueSorted(rows.map((r) => r.target_ar));
  const algorithms = uniqueSorted(rows.map((r) => r.algorithm));
  const values = new Map<string, number | null>();
  for (const r of rows) {
    values.set(`${r.algorithm}|${r.target_ar}`, r[column]);
  }

  const present = [...values.values()].filter(
    (v): v is number => v !== null && v > 0,
  );
  if (present.length === 0) {
    throw new NoDataError(`no ${column} values to plot`);
  }
  const maxV = Math.max(...present);
  const minV = Math.min(...present);
  const useLog = maxV / Math.max(minV, 1e-12) > 100; // beyond two decades

  const svg = new SvgBuilder(WIDTH, HEIGHT);
  const m = DEFAULT_MARGIN;
  const y = useLog
    ? logScale([minV / 1.5, maxV * 1.3], [HEIGHT - m.bottom, m.top])
    : linearScale([0, maxV * 1.1], [HEIGHT - m.bottom, m.top]);
  const yTicks = useLog ? logTicks(minV / 1.5, maxV * 1.3) : linearTicks(0, maxV * 1.1, 6);
  for (const tick of yTicks) {
    svg.line(m.left, y(tick), WIDTH - m.right, y(tick), "#ddd");
    svg.text(m.left - 8, y(tick) + 4, formatTick(tick), { anchor: "end", size: 11 });
  }

  const groupWidth = (WIDTH - m.left - m.right) / targets.length;
  const barWidth = (groupWidth * 0.72) / algorithms.length;
  const baseline = useLog ? y(minV / 1.5) : y(0);
  targets.forEach((target, gi) => {
    const groupLeft = m.left + gi * groupWidth + groupWidth * 0.14;
    algorithms.forEach((algorithm, ai) => {
      const v = values.get(`${algorithm}|${target}`) ?? null;
      const bx = groupLeft + ai * barWidth;
      if (v === null || v <= 0) {
        svg.text(bx + barWidth / 2, baseline - 4, "x", {
          anchor: "middle",
          size: 10,
          fill: "#999",
        });
        return;
      }
      svg.rect(bx, y(v), barWidth * 0.9, baseline - y(v), colorFor(algorithm, ai));
    });
    svg.text(m.left + gi * groupWidth + groupWidth / 2, HEIGHT - m.bottom + 20,
      `AR ${target}`, { anchor: "middle", size: 11 });
  });

  svg.line(m.left, HEIGHT - m.bottom, WIDTH - m.right, HEIGHT - m.bottom, "#333");
  svg.line(m.left, m.top, m.left, HEIGHT - m.bottom, "#333");
  svg.text(WIDTH / 2, HEIGHT - 14, "target approximation ratio", { anchor: "middle" });
  svg.text(18, HEIGHT / 2, label + (useLog ? " (log scale)" : ""), {
    anchor: "middle",
    rotate: -90,
  });
  svg.text(WIDTH / 2, 24, `${label}${graphType ? ` (${graphType})` : ""}`, {
    anchor: "middle",
    size: 14,
  });
  svg.legend(
    algorithms.map((algorithm, i) => ({ label: algorithm, color: colorFor(algorithm, i) })),
    WIDTH - m.right - 110,
    m.top + 8,
  );
  svg.text(m.left + 6, m.top + 10, "x: target not reached in sweep", {
    size: 11,
    fill: "#555",
  });
  return svg.toString();
}

function withSuffix(path: string, suffix: string): string {
  const dot = path.lastIndexOf(".");
  if (dot <= 0) {
    return `${path}_${suffix}.svg`;
  }
  return `${path.slice(0, dot)}_${suffix}${path.slice(dot)}`;
}

/** Renders the figure(s) for one spec and returns the files written. */
export function render(spec: FigureSpec): string[] {
  if (spec.kind === "ar_curves") {
    writeFileSync(spec.out, renderArCurves(spec));
    return [spec.out];
  }
  const rows = filterByType(
    parseAggregate(readFileSync(spec.input, "utf-8")),
    spec.graphType,
    spec.input,
  );
  if (spec.kind === "runs_bars") {
    writeFileSync(
      spec.out,
      renderBars(rows, "expected_runs", "expected optimization runs", spec.graphType),
    );
    return [spec.out];
  }
  if (spec.kind === "resource_bars") {
    const written: string[] = [];
    for (const metric of RESOURCE_METRICS) {
      const path = withSuffix(spec.out, metric.suffix);
      writeFileSync(path, renderBars(rows, metric.column, metric.label, spec.graphType));
      written.push(path);
    }
    return written;
  }
  throw new Error(`unknown figure kind: ${(spec as { kind: string }).kind}`);
}
