"""Comparison algorithms: direct solve on the full graph, local-subgraph
solve-and-merge, classical hill climbing, and the classical twin of the
progressive solver (same expansion walk, hill climbing per stage)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ansatz import QAOA_PLUS, account_circuit
from .graphs import (
    Graph,
    VertexSubset,
    bfs_distances,
    eccentricities,
    induced_subgraph,
    is_independent,
)
from .optimize import RANDOM_INIT, OptimizerConfig, RunResult, single_run
from .progressive import (
    EXIT_FULL,
    EXIT_NONE,
    EXIT_STOP,
    EdgeCheckCounter,
    check_stop,
    expansion_schedule,
)

DEFAULT_MAX_MOVES = 100_000


def ds_qaoa_plus_run(
    g: Graph, p: int, cfg: OptimizerConfig, rng: np.random.Generator
) -> RunResult:
    """Direct solve: one optimization run of the constrained-mixer circuit
    on the whole graph. Named wrapper so the harness treats algorithms
    uniformly."""
    return single_run(g, p, RANDOM_INIT, cfg, rng)


def qls_subgraph(g: Graph, root: int, radius: int) -> VertexSubset:
    """All vertices within BFS distance ``radius`` of the root."""
    dist = bfs_distances(g, root)
    return VertexSubset(frozenset(v for v, d in dist.items() if d <= radius))


@dataclass(frozen=True)
class QlsConfig:
    p: int
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)


@dataclass
class QlsBallRecord:
    root: int
    vertices: tuple[int, ...]
    f_value: float
    iterations: int
    evaluations: int
    qubits: int
    multi_ctrl_rx_gates: int
    circuit_depth: int
    merged: tuple[int, ...]


@dataclass
class QlsRunRecord:
    assignment: VertexSubset
    balls: list[QlsBallRecord]
    edge_checks: int

    @property
    def f_value(self) -> float:
        return float(len(self.assignment))

    @property
    def iterations(self) -> int:
        return sum(b.iterations for b in self.balls)

    @property
    def evaluations(self) -> int:
        return sum(b.evaluations for b in self.balls)

    @property
    def qubits_peak(self) -> int:
        return max(b.qubits for b in self.balls)

    @property
    def qubits_sum(self) -> int:
        return sum(b.qubits for b in self.balls)

    @property
    def multi_ctrl_rx_gates(self) -> int:
        return sum(b.multi_ctrl_rx_gates for b in self.balls)

    def runtime_segments(self) -> list[tuple[int, int]]:
        return [(b.circuit_depth, b.iterations) for b in self.balls]


def qls_run(g: Graph, cfg: QlsConfig, rng: np.random.Generator) -> QlsRunRecord:
    """Local-subgraph strategy: repeatedly solve a ball of radius
    min(eccentricities) around a random untouched root, then greedily merge
    conflict-free picks into the global assignment until all vertices are
    covered. The assignment stays independent after every merge."""
    radius = min(eccentricities(g))
    untouched = set(range(g.n))
    assignment: set[int] = set()
    counter = EdgeCheckCounter()
    balls: list[QlsBallRecord] = []
    while untouched:
        pool = sorted(untouched)
        root = pool[int(rng.integers(len(pool)))]
        ball = qls_subgraph(g, root, radius)
        sub, originals = induced_subgraph(g, ball)
        run = single_run(sub, cfg.p, RANDOM_INIT, cfg.optimizer, rng)
        picked = sorted(originals[i] for i in run.best_bitstring.members)
        merged = []
        for v in picked:
            conflict = False
            for member in sorted(assignment):
                counter.add(1)
                if g.has_edge(v, member):
                    conflict = True
                    break
            if not conflict:
                assignment.add(v)
                merged.append(v)
        untouched -= ball.members
        balls.append(
            QlsBallRecord(
                root=root,
                vertices=originals,
                f_value=run.best_F,
                iterations=run.iterations,
                evaluations=run.evaluations,
                qubits=run.accounting.qubits_total,
                multi_ctrl_rx_gates=run.accounting.multi_ctrl_rx_gates,
                circuit_depth=run.accounting.circuit_depth,
                merged=tuple(merged),
            )
        )
    return QlsRunRecord(
        assignment=VertexSubset(frozenset(assignment)),
        balls=balls,
        edge_checks=counter.count,
    )


def random_maximal_independent_set(g: Graph, rng: np.random.Generator) -> VertexSubset:
    """Greedy pass over a uniformly random vertex order."""
    members: set[int] = set()
    for v in rng.permutation(g.n):
        v = int(v)
        if not (g.adjacency[v] & members):
            members.add(v)
    return VertexSubset(frozenset(members))


def estimate_independence_number(
    g: Graph, rng: np.random.Generator, restarts: int = 100
) -> int:
    """Heuristic stand-in for the exact oracle beyond its enumeration cap:
    the largest independent set found over repeated local-search restarts."""
    best = 0
    for _ in range(restarts):
        best = max(best, len(hill_climb(g, RANDOM_INIT, rng).members))
    return best


@dataclass
class HillClimbResult:
    members: VertexSubset
    moves: int


def hill_climb(
    g: Graph,
    init: VertexSubset | str,
    rng: np.random.Generator,
    max_moves: int = DEFAULT_MAX_MOVES,
) -> HillClimbResult:
    """Local search on independent sets: add moves first, then 1-for-2 swaps
    (remove one member, add two non-adjacent replacements), until a local
    optimum or the move cap. The result is independent and maximal."""
    if init == RANDOM_INIT:
        current = set(random_maximal_independent_set(g, rng).members)
    else:
        if not is_independent(g, init):
            raise ValueError("initial set is not independent")
        current = set(init.members)

    def addable() -> list[int]:
        return [v for v in range(g.n) if v not in current and not (g.adjacency[v] & current)]

    moves = 0
    while moves < max_moves:
        adds = addable()
        if adds:
            current.add(adds[0])
            moves += 1
            continue
        swapped = False
        for u in sorted(current):
            rest = current - {u}
            # vertices blocked only by u become free once u leaves
            free = [
                v
                for v in range(g.n)
                if v != u and v not in current and not (g.adjacency[v] & rest)
            ]
            for i, a in enumerate(free):
                for b in free[i + 1 :]:
                    if not g.has_edge(a, b):
                        current.remove(u)
                        current.update((a, b))
                        moves += 1
                        swapped = True
                        break
                if swapped:
                    break
            if swapped:
                break
        if not swapped:
            break
    return HillClimbResult(VertexSubset(frozenset(current)), moves)


@dataclass(frozen=True)
class ClassicalPqaConfig:
    xi: float = 0.1
    initial_size: int = 3
    max_moves: int = DEFAULT_MAX_MOVES

    def __post_init__(self):
        if self.xi <= 0:
            raise ValueError(f"xi must be positive, got {self.xi}")
        if self.initial_size < 1:
            raise ValueError(f"initial size must be >= 1, got {self.initial_size}")


@dataclass
class ClassicalRoundRecord:
    vertices: tuple[int, ...]
    f_value: float
    moves: int
    exit_flag: str


@dataclass
class ClassicalPqaRecord:
    rounds: list[ClassicalRoundRecord]
    final_f: float
    final_vertices: VertexSubset
    exit_flag: str
    edge_checks: int

    @property
    def moves(self) -> int:
        return sum(r.moves for r in self.rounds)


def classical_pqa(
    g: Graph, cfg: ClassicalPqaConfig, rng: np.random.Generator
) -> ClassicalPqaRecord:
    """Classical twin of the progressive solver: identical expansion walk
    (same seed gives the same subgraph sequence), hill climbing per stage
    with the previous stage's solution inherited as the starting point.
    No early exits; stops on the three-stage plateau or the full graph.
    """
    # mirror the progressive runner's stream split so walks coincide per seed
    expand_rng = np.random.default_rng(int(rng.integers(2**63)))
    solve_rng = np.random.default_rng(int(rng.integers(2**63)))

    counter = EdgeCheckCounter()
    schedule = expansion_schedule(g, min(cfg.initial_size, g.n), expand_rng, counter)

    rounds: list[ClassicalRoundRecord] = []
    history: list[float] = []
    inherited: VertexSubset | str = RANDOM_INIT
    final_members = VertexSubset(frozenset())
    run_flag = EXIT_NONE

    for members in schedule:
        sub, originals = induced_subgraph(g, members)
        if inherited == RANDOM_INIT:
            local_init: VertexSubset | str = RANDOM_INIT
        else:
            index = {orig: i for i, orig in enumerate(originals)}
            local_init = VertexSubset(frozenset(index[v] for v in inherited.members))
        result = hill_climb(sub, local_init, solve_rng, cfg.max_moves)
        final_members = VertexSubset(
            frozenset(originals[i] for i in result.members.members)
        )
        inherited = final_members
        history.append(float(len(result.members)))
        flag = EXIT_NONE
        if check_stop(history, cfg.xi):
            flag = EXIT_STOP
        elif len(members) == g.n:
            flag = EXIT_FULL
        rounds.append(
            ClassicalRoundRecord(
                vertices=originals,
                f_value=history[-1],
                moves=result.moves,
                exit_flag=flag,
            )
        )
        if flag != EXIT_NONE:
            run_flag = flag
            break

    # completion pass: a stop on a proper subgraph can leave free vertices
    # in the full graph; extend greedily so the answer is always maximal
    members = set(final_members.members)
    for v in range(g.n):
        if v not in members and not (g.adjacency[v] & members):
            members.add(v)
    final_members = VertexSubset(frozenset(members))

    return ClassicalPqaRecord(
        rounds=rounds,
        final_f=float(len(members)),
        final_vertices=final_members,
        exit_flag=run_flag,
        edge_checks=counter.count,
    )
