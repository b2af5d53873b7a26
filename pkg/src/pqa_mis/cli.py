"""Command-line runner: instance generation, single solves, benchmark
sweeps, and aggregation of existing results."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .graphs import read_edge_list, write_edge_list
from .harness import (
    ALGORITHMS,
    ExperimentConfig,
    _run_task,
    _Task,
    aggregate_rows,
    build_graph,
    derive_seed,
    full_scale_preset,
    read_results_csv,
    run_benchmark,
    validate_rows,
    write_aggregate_csv,
    write_metadata,
    write_results_csv,
)


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _parse_str_list(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.preset:
        config = full_scale_preset(args.preset.removeprefix("full-"), args.master_seed)
    else:
        config = ExperimentConfig(master_seed=args.master_seed)
    data = config.to_dict()
    if args.config:
        data.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    overrides = {
        "graph_types": args.graph_types,
        "n": args.n,
        "graphs_per_type": args.graphs,
        "depths": args.depths,
        "runs_per_depth": args.runs,
        "algorithms": args.algorithms,
        "targets": args.targets,
        "graph_files": tuple(args.graph_files) if args.graph_files else None,
        "workers": args.workers,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    data["master_seed"] = args.master_seed
    return ExperimentConfig.from_dict(data)


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--preset", choices=["full-er04", "full-er05", "full-reg3"])
    sub.add_argument("--config", help="JSON file with ExperimentConfig fields")
    sub.add_argument("--graph-types", type=_parse_str_list, dest="graph_types")
    sub.add_argument("--n", type=int)
    sub.add_argument("--graphs", type=int, help="graphs per type")
    sub.add_argument("--depths", type=_parse_int_list, help="e.g. 1,2,3")
    sub.add_argument("--runs", type=int, help="optimization runs per depth")
    sub.add_argument("--algorithms", type=_parse_str_list, help=",".join(ALGORITHMS))
    sub.add_argument("--targets", type=_parse_float_list, help="target ARs, e.g. 0.9,0.95")
    sub.add_argument("--graph-files", nargs="*", dest="graph_files")
    sub.add_argument("--master-seed", type=int, default=0)
    sub.add_argument("--workers", type=int)


def cmd_gen(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for graph_type in config.graph_types:
        for graph_id in range(config.graphs_per_type):
            g = build_graph(config, graph_type, graph_id)
            name = f"{graph_type}_{graph_id:03d}.txt"
            write_edge_list(g, out / name)
            manifest[name] = {
                "graph_type": graph_type,
                "graph_id": graph_id,
                "seed": derive_seed(config.master_seed, "graph", graph_type, graph_id)
                if graph_type != "file"
                else None,
                "n": g.n,
                "m": g.m,
            }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(manifest)} graphs to {out}")
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    g = read_edge_list(args.graph)
    config = ExperimentConfig(
        graph_types=("file",),
        n=g.n,
        graphs_per_type=1,
        depths=(args.p,),
        runs_per_depth=1,
        algorithms=(args.algorithm,),
        master_seed=args.seed,
        graph_files=(args.graph,),
    )
    task = _Task(
        graph_type="file",
        graph_id=0,
        algorithm=args.algorithm,
        p=args.p,
        run_index=0,
        run_seed=args.seed,
    )
    row = _run_task((config, task))
    if args.trace and args.algorithm == "pqa":
        import numpy as np

        from .progressive import PqaConfig, pqa_run

        rec = pqa_run(
            g,
            PqaConfig(p=args.p, optimizer=config.optimizer),
            np.random.default_rng(args.seed),
        )
        Path(args.trace).write_text(rec.trace_lines(), encoding="utf-8")
    print(json.dumps(asdict(row), indent=2, sort_keys=True))
    return 0 if row.exit_flag != "error" else 1


def cmd_benchmark(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def progress(done: int, total: int) -> None:
        if done % 50 == 0 or done == total:
            print(f"\r{done}/{total} runs", end="", file=sys.stderr, flush=True)

    rows = run_benchmark(config, progress=progress if not args.quiet else None)
    if not args.quiet:
        print(file=sys.stderr)
    validate_rows(rows)
    write_results_csv(rows, out / "results.csv")
    write_aggregate_csv(aggregate_rows(rows, config.targets), out / "aggregate.csv")
    write_metadata(config, out / "metadata.json")
    print(f"wrote {len(rows)} rows to {out / 'results.csv'}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    rows = read_results_csv(args.results)
    validate_rows(rows)
    aggregates = aggregate_rows(rows, tuple(args.targets or (0.8, 0.85, 0.9, 0.95)))
    write_aggregate_csv(aggregates, args.out)
    print(f"wrote {len(aggregates)} aggregate rows to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pqa-mis",
        description="Benchmark harness for progressive MIS solving with a "
        "constrained-mixer variational circuit",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate graph instance files")
    _add_config_flags(gen)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    solve = subs.add_parser("solve", help="one run of one algorithm on one graph file")
    solve.add_argument("--graph", required=True, help="edge-list file")
    solve.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    solve.add_argument("--p", type=int, default=1)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--trace", help="write the per-stage JSON-lines trace here (pqa only)")
    solve.set_defaults(func=cmd_solve)

    bench = subs.add_parser("benchmark", help="full sweep with CSV outputs")
    _add_config_flags(bench)
    bench.add_argument("--out", required=True)
    bench.add_argument("--quiet", action="store_true")
    bench.set_defaults(func=cmd_benchmark)

    report = subs.add_parser("report", help="aggregate an existing results CSV")
    report.add_argument("--results", required=True)
    report.add_argument("--out", required=True)
    report.add_argument("--targets", type=float, nargs="*")
    report.set_defaults(func=cmd_report)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
