/**
 * Strict reader for the benchmark CSV schemas. The files are plain
 * comma-separated text without quoting (the harness never emits commas
 * inside values), so a split-based parser with hard schema validation is
 * all we need.
 */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export class NoDataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "NoDataError";
  }
}

export interface ResultRow {
  algorithm: string;
  graph_id: number;
  graph_type: string;
  n: number;
  seed: string;
  p: number;
  F: number;
  F_max: number;
  AR: number;
  iterations: number;
  evaluations: number;
  qubits_peak: number;
  qubits_sum: number;
  multi_ctrl_rx_gates: number;
  edge_checks_J: number;
  modeled_runtime_s: number;
  exit_flag: string;
}

export interface AggregateRow {
  algorithm: string;
  graph_type: string;
  target_ar: number;
  chosen_depth: number | null;
  expected_runs: number | null;
  total_iterations: number | null;
  total_qubits: number | null;
  total_gates: number | null;
  total_runtime_s: number | null;
}

export const RESULT_COLUMNS = [
  "algorithm",
  "graph_id",
  "graph_type",
  "n",
  "seed",
  "p",
  "F",
  "F_max",
  "AR",
  "iterations",
  "evaluations",
  "qubits_peak",
  "qubits_sum",
  "multi_ctrl_rx_gates",
  "edge_checks_J",
  "modeled_runtime_s",
  "exit_flag",
] as const;

export const AGGREGATE_COLUMNS = [
  "algorithm",
  "graph_type",
  "target_ar",
  "chosen_depth",
  "expected_runs",
  "total_iterations",
  "total_qubits",
  "total_gates",
  "total_runtime_s",
] as const;

interface Table {
  header: string[];
  records: Map<string, string>[];
}

function parseTable(text: string, required: readonly string[]): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header line");
  }
  const header = lines[0].split(",");
  for (const column of required) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing column: ${column}`);
    }
  }
  const records = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(
        `row ${i + 2}: expected ${header.length} cells, got ${cells.length}`,
      );
    }
    return new Map(header.map((name, j) => [name, cells[j]]));
  });
  return { header, records };
}

function num(record: Map<string, string>, column: string, row: number): number {
  const raw = record.get(column)!;
  const value = Number(raw);
  if (raw === "" || !Number.isFinite(value)) {
    throw new SchemaError(`row ${row}: column ${column} is not a number: "${raw}"`);
  }
  return value;
}

function optional(record: Map<string, string>, column: string, row: number): number | null {
  const raw = record.get(column)!;
  if (raw === "") {
    return null;
  }
  return num(record, column, row);
}

export function parseResults(text: string): ResultRow[] {
  const { records } = parseTable(text, RESULT_COLUMNS);
  return records.map((record, i) => {
    const row = i + 2;
    return {
      algorithm: record.get("algorithm")!,
      graph_id: num(record, "graph_id", row),
      graph_type: record.get("graph_type")!,
      n: num(record, "n", row),
      seed: record.get("seed")!,
      p: num(record, "p", row),
      F: num(record, "F", row),
      F_max: num(record, "F_max", row),
      AR: num(record, "AR", row),
      iterations: num(record, "iterations", row),
      evaluations: num(record, "evaluations", row),
      qubits_peak: num(record, "qubits_peak", row),
      qubits_sum: num(record, "qubits_sum", row),
      multi_ctrl_rx_gates: num(record, "multi_ctrl_rx_gates", row),
      edge_checks_J: num(record, "edge_checks_J", row),
      modeled_runtime_s: num(record, "modeled_runtime_s", row),
      exit_flag: record.get("exit_flag")!,
    };
  });
}

export function parseAggregate(text: string): AggregateRow[] {
  const { records } = parseTable(text, AGGREGATE_COLUMNS);
  return records.map((record, i) => {
    const row = i + 2;
    return {
      algorithm: record.get("algorithm")!,
      graph_type: record.get("graph_type")!,
      target_ar: num(record, "target_ar", row),
      chosen_depth: optional(record, "chosen_depth", row),
      expected_runs: optional(record, "expected_runs", row),
      total_iterations: optional(record, "total_iterations", row),
      total_qubits: optional(record, "total_qubits", row),
      total_gates: optional(record, "total_gates", row),
      total_runtime_s: optional(record, "total_runtime_s", row),
    };
  });
}
