"""Progressive solver: grow an induced subgraph by minimum-closeness
expansion with one-step lookahead tie-breaking, re-optimize the circuit on
each stage with parameters carried over from the previous stage, and stop
when the expectation plateaus or an early-exit trips.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .ansatz import QAOA_PLUS, AnsatzParams, QaoaPlusCircuit, account_circuit
from .graphs import Graph, VertexSubset, closeness, induced_subgraph, min_degree_vertex
from .optimize import OptimizerConfig, optimize_circuit, random_params
from .simulator import StateVector, argmax_basis_index

EXIT_NONE = "none"
EXIT_INIT = "init_exit"
EXIT_RESULT = "result_exit"
EXIT_STOP = "stop_condition"
EXIT_FULL = "full_graph"

EXIT_FLAGS = (EXIT_NONE, EXIT_INIT, EXIT_RESULT, EXIT_STOP, EXIT_FULL)


@dataclass(frozen=True)
class PqaConfig:
    p: int
    xi: float = 0.1
    initial_size: int = 3
    init_exit_frac: float = 0.5
    result_exit_frac: float = 0.8
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    skip_and_continue: bool = False

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"need depth p >= 1, got {self.p}")
        if self.xi <= 0:
            raise ValueError(f"xi must be positive, got {self.xi}")
        if self.initial_size < 1:
            raise ValueError(f"initial size must be >= 1, got {self.initial_size}")
        # fractions above 1 are degenerate but allowed: they force the exits
        if self.init_exit_frac <= 0 or self.result_exit_frac <= 0:
            raise ValueError("early-exit fractions must be positive")


class EdgeCheckCounter:
    """Counts single edge-existence queries for the classical-time model."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, k: int = 1) -> None:
        self.count += k


def closeness_minimizers(
    g: Graph, current: VertexSubset, counter: EdgeCheckCounter | None = None
) -> tuple[int, list[int]]:
    """Minimum closeness over all candidates and the tied candidate list."""
    candidates = [v for v in range(g.n) if v not in current]
    if not candidates:
        raise ValueError("no candidates: current set already covers the graph")
    scores = []
    for v in candidates:
        if counter is not None:
            counter.add(len(current))
        scores.append(closeness(g, current, v))
    smallest = min(scores)
    return smallest, [v for v, s in zip(candidates, scores) if s == smallest]


def lookahead_score(
    g: Graph, current: VertexSubset, tied: int, counter: EdgeCheckCounter | None = None
) -> int:
    """Minimum closeness over remaining candidates once ``tied`` joins;
    zero when no candidate remains."""
    extended = VertexSubset(current.members | {tied})
    remaining = [v for v in range(g.n) if v not in extended]
    if not remaining:
        return 0
    scores = []
    for v in remaining:
        if counter is not None:
            counter.add(len(extended))
        scores.append(closeness(g, extended, v))
    return min(scores)


def next_vertex(
    g: Graph,
    current: VertexSubset,
    rng: np.random.Generator,
    counter: EdgeCheckCounter | None = None,
) -> int:
    """The expansion choice: global closeness minimizer, lookahead on ties,
    residual ties broken uniformly at random."""
    _, tied = closeness_minimizers(g, current, counter)
    if len(tied) == 1:
        return tied[0]
    lookaheads = [lookahead_score(g, current, t, counter) for t in tied]
    best = min(lookaheads)
    finalists = [t for t, s in zip(tied, lookaheads) if s == best]
    if len(finalists) == 1:
        return finalists[0]
    return finalists[int(rng.integers(len(finalists)))]


def expand_edges(
    g: Graph,
    current: VertexSubset,
    new_vertex: int,
    counter: EdgeCheckCounter | None = None,
) -> list[tuple[int, int]]:
    """Edges of g between ``new_vertex`` and the current set, normalized."""
    if new_vertex in current:
        raise ValueError(f"vertex {new_vertex} already in the current set")
    added = []
    for v in sorted(current.members):
        if counter is not None:
            counter.add(1)
        if g.has_edge(new_vertex, v):
            added.append((min(new_vertex, v), max(new_vertex, v)))
    return added


def build_initial_subgraph(
    g: Graph,
    k0: int,
    rng: np.random.Generator,
    counter: EdgeCheckCounter | None = None,
) -> VertexSubset:
    """Seed vertex of minimum degree, then closeness-guided growth to k0."""
    if not 1 <= k0 <= g.n:
        raise ValueError(f"initial size {k0} outside [1, {g.n}]")
    members = {min_degree_vertex(g, rng)}
    while len(members) < k0:
        members.add(next_vertex(g, VertexSubset(frozenset(members)), rng, counter))
    return VertexSubset(frozenset(members))


def expansion_schedule(
    g: Graph,
    k0: int,
    rng: np.random.Generator,
    counter: EdgeCheckCounter | None = None,
):
    """Lazily yields the nested vertex sets of one expansion walk: the
    initial set first, then one grown set per step until the full graph."""
    members = build_initial_subgraph(g, k0, rng, counter)
    yield members
    while len(members) < g.n:
        v = next_vertex(g, members, rng, counter)
        expand_edges(g, members, v, counter)
        members = VertexSubset(members.members | {v})
        yield members


def check_stop(history: list[float], xi: float) -> bool:
    """True when the last three expectation values are pairwise stable."""
    if len(history) < 3:
        return False
    older, prev, last = history[-3:]
    return abs(last - prev) <= xi and abs(prev - older) <= xi


@dataclass
class RoundRecord:
    """One subgraph stage of a progressive run."""

    vertices: tuple[int, ...]
    f_value: float
    iterations: int
    evaluations: int
    transfer_evals: int
    exit_flag: str
    qubits: int
    multi_ctrl_rx_gates: int
    circuit_depth: int
    init_params: AnsatzParams | None = None
    best_params: AnsatzParams | None = None

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "f_value": self.f_value,
            "iterations": self.iterations,
            "evaluations": self.evaluations,
            "transfer_evals": self.transfer_evals,
            "exit_flag": self.exit_flag,
            "qubits": self.qubits,
            "multi_ctrl_rx_gates": self.multi_ctrl_rx_gates,
            "circuit_depth": self.circuit_depth,
            "init_params": None
            if self.init_params is None
            else [list(self.init_params.gammas), list(self.init_params.betas)],
            "best_params": None
            if self.best_params is None
            else [list(self.best_params.gammas), list(self.best_params.betas)],
        }


@dataclass
class PqaRunRecord:
    rounds: list[RoundRecord]
    final_f: float
    final_vertices: VertexSubset
    exit_flag: str
    edge_checks: int

    @property
    def iterations(self) -> int:
        return sum(r.iterations for r in self.rounds)

    @property
    def evaluations(self) -> int:
        return sum(r.evaluations for r in self.rounds)

    @property
    def qubits_peak(self) -> int:
        return max(r.qubits for r in self.rounds)

    @property
    def qubits_sum(self) -> int:
        return sum(r.qubits for r in self.rounds)

    @property
    def multi_ctrl_rx_gates(self) -> int:
        return sum(r.multi_ctrl_rx_gates for r in self.rounds)

    def runtime_segments(self) -> list[tuple[int, int]]:
        """(circuit depth, circuit-running episodes) per round; the transfer
        evaluation counts as one episode since it runs the circuit."""
        return [(r.circuit_depth, r.iterations + r.transfer_evals) for r in self.rounds]

    def trace_lines(self) -> str:
        return "\n".join(json.dumps(r.to_dict()) for r in self.rounds) + "\n"


def _solution_subset(state: StateVector, originals: tuple[int, ...]) -> VertexSubset:
    local = VertexSubset.from_index(argmax_basis_index(state))
    return VertexSubset(frozenset(originals[i] for i in local.members))


def pqa_run(g: Graph, cfg: PqaConfig, rng: np.random.Generator) -> PqaRunRecord:
    """One progressive optimization run on g.

    Stage 0 optimizes the seed subgraph from random angles. Every later
    stage first prices the carried-over angles on the grown subgraph: a
    value collapsing below init_exit_frac of the previous stage ends the run
    with the previous stage's solution. After re-optimization, a value below
    result_exit_frac of the running maximum ends the run with the best
    stage's solution. Otherwise the run ends on a three-stage plateau or on
    reaching the full graph.
    """
    # independent streams so the expansion walk is identical for the
    # classical twin under the same seed
    expand_rng = np.random.default_rng(int(rng.integers(2**63)))
    solve_rng = np.random.default_rng(int(rng.integers(2**63)))

    counter = EdgeCheckCounter()
    schedule = expansion_schedule(g, min(cfg.initial_size, g.n), expand_rng, counter)

    members = next(schedule)
    sub, originals = induced_subgraph(g, members)
    circuit = QaoaPlusCircuit(sub)
    run0 = optimize_circuit(circuit, random_params(cfg.p, solve_rng), cfg.optimizer)
    acc = account_circuit(sub, cfg.p, QAOA_PLUS)
    rounds = [
        RoundRecord(
            vertices=originals,
            f_value=run0.best_F,
            iterations=run0.iterations,
            evaluations=run0.evaluations,
            transfer_evals=0,
            exit_flag=EXIT_NONE,
            qubits=acc.qubits_total,
            multi_ctrl_rx_gates=acc.multi_ctrl_rx_gates,
            circuit_depth=acc.circuit_depth,
            init_params=run0.init_params,
            best_params=run0.best_params,
        )
    ]
    history = [run0.best_F]
    stage_solutions = [(run0.final_state, originals)]
    winner = 0
    run_flag = EXIT_NONE

    if len(members) == g.n:
        run_flag = EXIT_FULL
        rounds[0].exit_flag = EXIT_FULL

    while run_flag == EXIT_NONE:
        members = next(schedule)
        sub, originals = induced_subgraph(g, members)
        circuit = QaoaPlusCircuit(sub)
        acc = account_circuit(sub, cfg.p, QAOA_PLUS)
        carried = rounds[-1].best_params
        if carried is None:  # previous stage was skipped (skip_and_continue)
            carried = next(r.best_params for r in reversed(rounds) if r.best_params)
        f_init = circuit.expectation(carried)

        if f_init < cfg.init_exit_frac * history[-1]:
            rounds.append(
                RoundRecord(
                    vertices=originals,
                    f_value=f_init,
                    iterations=0,
                    evaluations=1,
                    transfer_evals=1,
                    exit_flag=EXIT_INIT,
                    qubits=acc.qubits_total,
                    multi_ctrl_rx_gates=acc.multi_ctrl_rx_gates,
                    circuit_depth=acc.circuit_depth,
                    init_params=carried,
                    best_params=None,
                )
            )
            if cfg.skip_and_continue and len(members) < g.n:
                continue
            run_flag = EXIT_INIT
            break

        result = optimize_circuit(circuit, carried, cfg.optimizer)
        history.append(result.best_F)
        stage_solutions.append((result.final_state, originals))
        record = RoundRecord(
            vertices=originals,
            f_value=result.best_F,
            iterations=result.iterations,
            evaluations=result.evaluations + 1,
            transfer_evals=1,
            exit_flag=EXIT_NONE,
            qubits=acc.qubits_total,
            multi_ctrl_rx_gates=acc.multi_ctrl_rx_gates,
            circuit_depth=acc.circuit_depth,
            init_params=carried,
            best_params=result.best_params,
        )
        rounds.append(record)

        if result.best_F < cfg.result_exit_frac * max(history):
            record.exit_flag = EXIT_RESULT
            run_flag = EXIT_RESULT
            winner = int(np.argmax(history))
        elif check_stop(history, cfg.xi):
            record.exit_flag = EXIT_STOP
            run_flag = EXIT_STOP
            winner = len(history) - 1
        elif len(members) == g.n:
            record.exit_flag = EXIT_FULL
            run_flag = EXIT_FULL
            winner = len(history) - 1
        else:
            winner = len(history) - 1

    if run_flag == EXIT_INIT:
        winner = len(history) - 1

    state, winner_originals = stage_solutions[winner]
    return PqaRunRecord(
        rounds=rounds,
        final_f=history[winner],
        final_vertices=_solution_subset(state, winner_originals),
        exit_flag=run_flag,
        edge_checks=counter.count,
    )
