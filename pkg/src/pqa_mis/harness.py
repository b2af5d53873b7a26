"""Experiment engine: deterministic instance generation, algorithm sweeps,
result rows, and the aggregation that turns raw runs into per-target
resource totals.

Everything downstream of (config, master_seed) is reproducible: run seeds
are stable hashes, workers return rows in task order, and floats are
serialized with shortest-roundtrip repr, so output files are byte-identical
across invocations.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from . import __version__
from .baselines import (
    ClassicalPqaConfig,
    QlsConfig,
    classical_pqa,
    ds_qaoa_plus_run,
    estimate_independence_number,
    hill_climb,
    qls_run,
)
from .graphs import (
    ORACLE_MAX_VERTICES,
    Graph,
    brute_force_mis,
    erdos_renyi,
    random_regular,
    read_edge_list,
)
from .metrics import (
    ResourceLedger,
    RuntimeModelConfig,
    approximation_ratio,
    estimate_runs_to_target,
    modeled_runtime,
    shallowest_depth_achieving,
    total_resources,
)
from .optimize import RANDOM_INIT, OptimizerConfig
from .progressive import EXIT_FLAGS, EXIT_NONE, PqaConfig, pqa_run

ALGORITHMS = ("pqa", "ds", "qls", "hill", "cpqa")
GRAPH_TYPES = ("er04", "er05", "reg3", "file")
EXIT_ERROR = "error"
CSV_EXIT_FLAGS = EXIT_FLAGS + (EXIT_ERROR,)

RESULTS_COLUMNS = [
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
]

AGGREGATE_COLUMNS = [
    "algorithm",
    "graph_type",
    "target_ar",
    "chosen_depth",
    "expected_runs",
    "total_iterations",
    "total_qubits",
    "total_gates",
    "total_runtime_s",
]

WORKERS_ENV = "PQA_MIS_WORKERS"

RUNS_RULE_FIXED = "fixed"
RUNS_RULE_DEEP_DOUBLING = "deep_doubling"


@dataclass(frozen=True)
class PqaSettings:
    """Progressive-solver knobs minus the depth, which the sweep supplies."""

    xi: float = 0.1
    initial_size: int = 3
    init_exit_frac: float = 0.5
    result_exit_frac: float = 0.8
    skip_and_continue: bool = False


@dataclass(frozen=True)
class ExperimentConfig:
    graph_types: tuple[str, ...] = ("er05",)
    n: int = 14
    graphs_per_type: int = 20
    depths: tuple[int, ...] = (1, 2, 3, 4, 5)
    runs_per_depth: int = 100
    runs_rule: str = RUNS_RULE_FIXED
    algorithms: tuple[str, ...] = ALGORITHMS
    master_seed: int = 0
    targets: tuple[float, ...] = (0.8, 0.85, 0.9, 0.95)
    graph_files: tuple[str, ...] = ()
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    pqa: PqaSettings = field(default_factory=PqaSettings)
    runtime_model: RuntimeModelConfig = field(default_factory=RuntimeModelConfig)
    workers: int = 0

    def __post_init__(self):
        for t in self.graph_types:
            if t not in GRAPH_TYPES:
                raise ValueError(f"unknown graph type {t!r}")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        if not self.depths:
            raise ValueError("need at least one depth")
        if self.runs_per_depth < 1:
            raise ValueError("runs_per_depth must be >= 1")
        if self.runs_rule not in (RUNS_RULE_FIXED, RUNS_RULE_DEEP_DOUBLING):
            raise ValueError(f"unknown runs rule {self.runs_rule!r}")

    def runs_at_depth(self, p: int) -> int:
        if self.runs_rule == RUNS_RULE_DEEP_DOUBLING and p > 6:
            return 2**p
        return self.runs_per_depth

    def to_dict(self) -> dict:
        return {
            "graph_types": list(self.graph_types),
            "n": self.n,
            "graphs_per_type": self.graphs_per_type,
            "depths": list(self.depths),
            "runs_per_depth": self.runs_per_depth,
            "runs_rule": self.runs_rule,
            "algorithms": list(self.algorithms),
            "master_seed": self.master_seed,
            "targets": list(self.targets),
            "graph_files": list(self.graph_files),
            "optimizer": {
                "epsilon": self.optimizer.epsilon,
                "max_iterations": self.optimizer.max_iterations,
                "initial_step": self.optimizer.initial_step,
                "patience": self.optimizer.patience,
            },
            "pqa": {
                "xi": self.pqa.xi,
                "initial_size": self.pqa.initial_size,
                "init_exit_frac": self.pqa.init_exit_frac,
                "result_exit_frac": self.pqa.result_exit_frac,
                "skip_and_continue": self.pqa.skip_and_continue,
            },
            "runtime_model": {
                "t_prep_plus_meas": self.runtime_model.t_prep_plus_meas,
                "t_gate": self.runtime_model.t_gate,
                "t_edge_check": self.runtime_model.t_edge_check,
                "shots": self.runtime_model.shots,
            },
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        kwargs = dict(data)
        for key in ("graph_types", "depths", "algorithms", "targets", "graph_files"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        if "optimizer" in kwargs:
            kwargs["optimizer"] = OptimizerConfig(**kwargs["optimizer"])
        if "pqa" in kwargs:
            kwargs["pqa"] = PqaSettings(**kwargs["pqa"])
        if "runtime_model" in kwargs:
            kwargs["runtime_model"] = RuntimeModelConfig(**kwargs["runtime_model"])
        return cls(**kwargs)


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 63-bit stream seed from the master seed and a label tuple."""
    text = json.dumps([master_seed, *parts], separators=(",", ":"))
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def build_graph(config: ExperimentConfig, graph_type: str, graph_id: int) -> Graph:
    seed = derive_seed(config.master_seed, "graph", graph_type, graph_id)
    if graph_type == "er04":
        return erdos_renyi(config.n, 0.4, seed)
    if graph_type == "er05":
        return erdos_renyi(config.n, 0.5, seed)
    if graph_type == "reg3":
        return random_regular(config.n, 3, seed)
    if graph_type == "file":
        return read_edge_list(config.graph_files[graph_id])
    raise ValueError(f"unknown graph type {graph_type!r}")


@dataclass
class RunRow:
    algorithm: str
    graph_id: int
    graph_type: str
    n: int
    seed: int
    p: int
    F: float
    F_max: float
    AR: float
    iterations: int
    evaluations: int
    qubits_peak: int
    qubits_sum: int
    multi_ctrl_rx_gates: int
    edge_checks_J: int
    modeled_runtime_s: float
    exit_flag: str

    def to_csv_values(self) -> list[str]:
        values = []
        for name in RESULTS_COLUMNS:
            v = getattr(self, name)
            values.append(repr(v) if isinstance(v, float) else str(v))
        return values


def execute_run(
    g: Graph,
    algorithm: str,
    p: int,
    run_seed: int,
    optimizer: OptimizerConfig,
    pqa_settings: PqaSettings,
    rt: RuntimeModelConfig,
) -> dict:
    """One optimization run; returns the row fields that depend on it."""
    rng = np.random.default_rng(run_seed)
    if algorithm == "ds":
        r = ds_qaoa_plus_run(g, p, optimizer, rng)
        acc = r.accounting
        return {
            "F": r.best_F,
            "iterations": r.iterations,
            "evaluations": r.evaluations,
            "qubits_peak": acc.qubits_total,
            "qubits_sum": acc.qubits_total,
            "multi_ctrl_rx_gates": acc.multi_ctrl_rx_gates,
            "edge_checks_J": 0,
            "modeled_runtime_s": modeled_runtime(
                [(acc.circuit_depth, r.iterations)], rt
            ),
            "exit_flag": EXIT_NONE,
        }
    if algorithm == "qls":
        rec = qls_run(g, QlsConfig(p=p, optimizer=optimizer), rng)
        return {
            "F": rec.f_value,
            "iterations": rec.iterations,
            "evaluations": rec.evaluations,
            "qubits_peak": rec.qubits_peak,
            "qubits_sum": rec.qubits_sum,
            "multi_ctrl_rx_gates": rec.multi_ctrl_rx_gates,
            "edge_checks_J": rec.edge_checks,
            "modeled_runtime_s": modeled_runtime(
                rec.runtime_segments(), rt, rec.edge_checks
            ),
            "exit_flag": EXIT_NONE,
        }
    if algorithm == "pqa":
        cfg = PqaConfig(
            p=p,
            xi=pqa_settings.xi,
            initial_size=pqa_settings.initial_size,
            init_exit_frac=pqa_settings.init_exit_frac,
            result_exit_frac=pqa_settings.result_exit_frac,
            optimizer=optimizer,
            skip_and_continue=pqa_settings.skip_and_continue,
        )
        rec = pqa_run(g, cfg, rng)
        return {
            "F": rec.final_f,
            "iterations": rec.iterations,
            "evaluations": rec.evaluations,
            "qubits_peak": rec.qubits_peak,
            "qubits_sum": rec.qubits_sum,
            "multi_ctrl_rx_gates": rec.multi_ctrl_rx_gates,
            "edge_checks_J": rec.edge_checks,
            "modeled_runtime_s": modeled_runtime(
                rec.runtime_segments(), rt, rec.edge_checks
            ),
            "exit_flag": rec.exit_flag,
        }
    if algorithm == "hill":
        res = hill_climb(g, RANDOM_INIT, rng)
        return {
            "F": float(len(res.members)),
            "iterations": res.moves,
            "evaluations": res.moves,
            "qubits_peak": 0,
            "qubits_sum": 0,
            "multi_ctrl_rx_gates": 0,
            "edge_checks_J": 0,
            "modeled_runtime_s": 0.0,
            "exit_flag": EXIT_NONE,
        }
    if algorithm == "cpqa":
        rec = classical_pqa(
            g,
            ClassicalPqaConfig(
                xi=pqa_settings.xi, initial_size=pqa_settings.initial_size
            ),
            rng,
        )
        return {
            "F": rec.final_f,
            "iterations": rec.moves,
            "evaluations": rec.moves,
            "qubits_peak": 0,
            "qubits_sum": 0,
            "multi_ctrl_rx_gates": 0,
            "edge_checks_J": rec.edge_checks,
            "modeled_runtime_s": rec.edge_checks * rt.t_edge_check,
            "exit_flag": rec.exit_flag,
        }
    raise ValueError(f"unknown algorithm {algorithm!r}")


@dataclass(frozen=True)
class _Task:
    graph_type: str
    graph_id: int
    algorithm: str
    p: int
    run_index: int
    run_seed: int


def _tasks(config: ExperimentConfig) -> list[_Task]:
    tasks = []
    for graph_type in config.graph_types:
        for graph_id in range(config.graphs_per_type):
            for algorithm in config.algorithms:
                for p in config.depths:
                    for run_index in range(config.runs_at_depth(p)):
                        seed = derive_seed(
                            config.master_seed,
                            "run",
                            graph_type,
                            graph_id,
                            algorithm,
                            p,
                            run_index,
                        )
                        tasks.append(
                            _Task(graph_type, graph_id, algorithm, p, run_index, seed)
                        )
    return tasks


_GRAPH_CACHE: dict[tuple, tuple[Graph, int]] = {}


def reference_independence_number(
    config: ExperimentConfig, g: Graph, graph_type: str, graph_id: int
) -> int:
    """Exact oracle up to the enumeration cap; above it, the best set found
    by seeded local-search restarts (the method is recorded in metadata)."""
    if g.n <= ORACLE_MAX_VERTICES:
        return brute_force_mis(g).independence_number
    rng = np.random.default_rng(
        derive_seed(config.master_seed, "fmax", graph_type, graph_id)
    )
    return estimate_independence_number(g, rng)


def f_max_method(config: ExperimentConfig) -> str:
    return "oracle" if config.n <= ORACLE_MAX_VERTICES else "heuristic"


def _graph_and_fmax(config: ExperimentConfig, graph_type: str, graph_id: int):
    key = (config.master_seed, config.n, graph_type, graph_id, config.graph_files)
    if key not in _GRAPH_CACHE:
        g = build_graph(config, graph_type, graph_id)
        _GRAPH_CACHE[key] = (
            g,
            reference_independence_number(config, g, graph_type, graph_id),
        )
    return _GRAPH_CACHE[key]


def _run_task(args: tuple[ExperimentConfig, _Task]) -> RunRow:
    config, task = args
    g, f_max = _graph_and_fmax(config, task.graph_type, task.graph_id)
    base = dict(
        algorithm=task.algorithm,
        graph_id=task.graph_id,
        graph_type=task.graph_type,
        n=g.n,
        seed=task.run_seed,
        p=task.p,
        F_max=float(f_max),
    )
    try:
        fields = execute_run(
            g,
            task.algorithm,
            task.p,
            task.run_seed,
            config.optimizer,
            config.pqa,
            config.runtime_model,
        )
    except Exception:  # record and continue: one bad run must not kill a sweep
        return RunRow(
            **base,
            F=float("nan"),
            AR=float("nan"),
            iterations=0,
            evaluations=0,
            qubits_peak=0,
            qubits_sum=0,
            multi_ctrl_rx_gates=0,
            edge_checks_J=0,
            modeled_runtime_s=0.0,
            exit_flag=EXIT_ERROR,
        )
    return RunRow(
        **base,
        AR=approximation_ratio(fields["F"], float(f_max)),
        **fields,
    )


def resolve_workers(config: ExperimentConfig) -> int:
    if config.workers > 0:
        return config.workers
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_benchmark(config: ExperimentConfig, progress=None) -> list[RunRow]:
    """Execute the full sweep; rows come back in canonical task order, so
    equal configs and seeds produce byte-identical output files."""
    tasks = _tasks(config)
    workers = resolve_workers(config)
    rows: list[RunRow] = []
    if workers <= 1:
        for i, task in enumerate(tasks):
            rows.append(_run_task((config, task)))
            if progress:
                progress(i + 1, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            args = [(config, t) for t in tasks]
            for i, row in enumerate(pool.map(_run_task, args, chunksize=16)):
                rows.append(row)
                if progress:
                    progress(i + 1, len(tasks))
    return rows


def write_results_csv(rows: Iterable[RunRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RESULTS_COLUMNS)
        for row in rows:
            writer.writerow(row.to_csv_values())


def read_results_csv(path: str | Path) -> list[RunRow]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(RESULTS_COLUMNS) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"results CSV missing columns: {sorted(missing)}")
        for line_no, rec in enumerate(reader, start=2):
            try:
                rows.append(
                    RunRow(
                        algorithm=rec["algorithm"],
                        graph_id=int(rec["graph_id"]),
                        graph_type=rec["graph_type"],
                        n=int(rec["n"]),
                        seed=int(rec["seed"]),
                        p=int(rec["p"]),
                        F=float(rec["F"]),
                        F_max=float(rec["F_max"]),
                        AR=float(rec["AR"]),
                        iterations=int(rec["iterations"]),
                        evaluations=int(rec["evaluations"]),
                        qubits_peak=int(rec["qubits_peak"]),
                        qubits_sum=int(rec["qubits_sum"]),
                        multi_ctrl_rx_gates=int(rec["multi_ctrl_rx_gates"]),
                        edge_checks_J=int(rec["edge_checks_J"]),
                        modeled_runtime_s=float(rec["modeled_runtime_s"]),
                        exit_flag=rec["exit_flag"],
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"results CSV row {line_no}: {exc}") from exc
    return rows


def validate_rows(rows: Iterable[RunRow]) -> None:
    for i, row in enumerate(rows):
        if row.exit_flag not in CSV_EXIT_FLAGS:
            raise ValueError(f"row {i}: bad exit flag {row.exit_flag!r}")
        if row.exit_flag == EXIT_ERROR:
            continue
        if abs(row.AR - row.F / row.F_max) > 1e-9:
            raise ValueError(f"row {i}: AR {row.AR} != F/F_max")


def _ledger_qubits(row: RunRow) -> int:
    # per-run qubit figure: peak requirement for staged/direct algorithms,
    # summed ball sizes for the local-subgraph strategy
    if row.algorithm == "qls":
        return row.qubits_sum
    return row.qubits_peak


@dataclass
class AggregateRow:
    algorithm: str
    graph_type: str
    target_ar: float
    chosen_depth: float | None
    expected_runs: float | None
    total_iterations: float | None
    total_qubits: float | None
    total_gates: float | None
    total_runtime_s: float | None

    def to_csv_values(self) -> list[str]:
        out = [self.algorithm, self.graph_type, repr(self.target_ar)]
        for v in (
            self.chosen_depth,
            self.expected_runs,
            self.total_iterations,
            self.total_qubits,
            self.total_gates,
            self.total_runtime_s,
        ):
            out.append("" if v is None else repr(float(v)))
        return out


def aggregate_rows(rows: list[RunRow], targets: Iterable[float]) -> list[AggregateRow]:
    """Per (algorithm, graph type, target): find each graph's shallowest
    achieving depth, scale that depth's mean per-run resources by the
    expected run count, then average across graphs. Graphs that never reach
    the target are left out; an empty set yields an absent (blank) row."""
    ok_rows = [r for r in rows if r.exit_flag != EXIT_ERROR]
    by_group: dict[tuple[str, str], dict[int, list[RunRow]]] = {}
    for r in ok_rows:
        by_group.setdefault((r.graph_type, r.algorithm), {}).setdefault(
            r.graph_id, []
        ).append(r)

    out = []
    for (graph_type, algorithm), graphs in sorted(by_group.items()):
        for target in targets:
            per_graph: list[tuple[float, float, ResourceLedger]] = []
            for graph_id, graph_rows in sorted(graphs.items()):
                oar_by_depth: dict[int, float] = {}
                for r in graph_rows:
                    oar_by_depth[r.p] = max(oar_by_depth.get(r.p, 0.0), r.AR)
                chosen = shallowest_depth_achieving(oar_by_depth, target)
                if chosen is None:
                    continue
                at_depth = [r for r in graph_rows if r.p == chosen]
                q = sum(1 for r in at_depth if r.AR >= target)
                expected = estimate_runs_to_target(q, len(at_depth))
                ledgers = [
                    ResourceLedger(
                        runs=1.0,
                        iterations=float(r.iterations),
                        evaluations=float(r.evaluations),
                        qubits=float(_ledger_qubits(r)),
                        multi_ctrl_rx_gates=float(r.multi_ctrl_rx_gates),
                        modeled_runtime=r.modeled_runtime_s,
                    )
                    for r in at_depth
                ]
                per_graph.append(
                    (float(chosen), expected, total_resources(ledgers, expected))
                )
            if not per_graph:
                out.append(
                    AggregateRow(algorithm, graph_type, target, None, None, None, None, None, None)
                )
                continue
            k = len(per_graph)
            out.append(
                AggregateRow(
                    algorithm=algorithm,
                    graph_type=graph_type,
                    target_ar=target,
                    chosen_depth=sum(c for c, _, _ in per_graph) / k,
                    expected_runs=sum(e for _, e, _ in per_graph) / k,
                    total_iterations=sum(t.iterations for _, _, t in per_graph) / k,
                    total_qubits=sum(t.qubits for _, _, t in per_graph) / k,
                    total_gates=sum(t.multi_ctrl_rx_gates for _, _, t in per_graph) / k,
                    total_runtime_s=sum(t.modeled_runtime for _, _, t in per_graph) / k,
                )
            )
    return out


def write_aggregate_csv(rows: Iterable[AggregateRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_COLUMNS)
        for row in rows:
            writer.writerow(row.to_csv_values())


def write_metadata(config: ExperimentConfig, path: str | Path) -> None:
    payload = {
        "config": config.to_dict(),
        "f_max_method": f_max_method(config),
        "version": __version__,
    }
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def full_scale_preset(graph_type: str, master_seed: int = 0) -> ExperimentConfig:
    """Full-scale benchmark: 20 fourteen-vertex graphs of one type, depths
    1..5, 100 optimization runs per depth, every algorithm."""
    return ExperimentConfig(
        graph_types=(graph_type,),
        n=14,
        graphs_per_type=20,
        depths=(1, 2, 3, 4, 5),
        runs_per_depth=100,
        algorithms=ALGORITHMS,
        master_seed=master_seed,
    )
