import itertools

import numpy as np
import pytest

from pqa_mis.baselines import (
    ClassicalPqaConfig,
    QlsConfig,
    classical_pqa,
    ds_qaoa_plus_run,
    hill_climb,
    qls_run,
    qls_subgraph,
    random_maximal_independent_set,
)
from pqa_mis.graphs import (
    Graph,
    VertexSubset,
    brute_force_mis,
    eccentricities,
    erdos_renyi,
    is_independent,
)
from pqa_mis.optimize import OptimizerConfig
from pqa_mis.progressive import EXIT_FULL, EXIT_STOP, PqaConfig, pqa_run

FIG1 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)])
K2 = Graph.from_edges(2, [(0, 1)])


def test_ds_is_a_single_run_on_the_full_graph():
    res = ds_qaoa_plus_run(FIG1, 1, OptimizerConfig(), np.random.default_rng(0))
    assert res.accounting.qubits_logical == 5
    assert res.accounting.qubits_total == 6
    assert is_independent(FIG1, res.best_bitstring)


def test_ds_reaches_optimum_on_small_graphs():
    best = 0.0
    for seed in range(10):
        res = ds_qaoa_plus_run(FIG1, 2, OptimizerConfig(), np.random.default_rng(seed))
        best = max(best, res.best_F)
    assert best >= 2.99  # beta(FIG1) = 3 attainable

    k2_best = max(
        ds_qaoa_plus_run(K2, 1, OptimizerConfig(), np.random.default_rng(s)).best_F
        for s in range(5)
    )
    assert k2_best >= 0.99

    single = Graph.from_edges(1, [])
    res = ds_qaoa_plus_run(
        single, 1, OptimizerConfig(epsilon=1e-9, patience=10), np.random.default_rng(1)
    )
    assert res.best_F >= 1 - 1e-6


def test_qls_subgraph_balls():
    assert sorted(qls_subgraph(FIG1, 0, 1).members) == [0, 1, 2, 3, 4]
    assert sorted(qls_subgraph(FIG1, 1, 1).members) == [0, 1]
    assert sorted(qls_subgraph(FIG1, 1, 4).members) == [0, 1, 2, 3, 4]  # >= diameter


def test_qls_single_ball_covers_fig1():
    # radius is min eccentricity = 1; a root draw of 0 covers everything
    assert min(eccentricities(FIG1)) == 1
    rec = qls_run(FIG1, QlsConfig(p=1), np.random.default_rng(0))
    assert is_independent(FIG1, rec.assignment)
    assert rec.qubits_peak <= 6
    assert len(rec.balls) >= 1


def test_qls_edgeless_graph_selects_everything():
    g = Graph.from_edges(5, [])
    rec = qls_run(g, QlsConfig(p=1), np.random.default_rng(1))
    assert sorted(rec.assignment.members) == [0, 1, 2, 3, 4]
    assert rec.f_value == 5.0


def test_qls_path_merge_outcomes():
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert min(eccentricities(path)) == 1
    sizes = set()
    for seed in range(10):
        rec = qls_run(path, QlsConfig(p=1), np.random.default_rng(seed))
        assert is_independent(path, rec.assignment)
        sizes.add(len(rec.assignment))
    assert sizes <= {1, 2} and 2 in sizes


def test_qls_assignment_always_independent_and_covering():
    for seed in range(6):
        g = erdos_renyi(9, 0.4, seed)
        rec = qls_run(g, QlsConfig(p=1), np.random.default_rng(seed))
        assert is_independent(g, rec.assignment)
        touched = set()
        for ball in rec.balls:
            touched |= set(ball.vertices)
        assert touched == set(range(9))
        assert rec.edge_checks >= 0
        assert rec.qubits_sum >= rec.qubits_peak


def test_hill_climb_examples():
    res = hill_climb(FIG1, VertexSubset.of(0), np.random.default_rng(0))
    assert len(res.members) == 3
    assert is_independent(FIG1, res.members)

    edgeless = Graph.from_edges(5, [])
    res = hill_climb(edgeless, "random", np.random.default_rng(1))
    assert sorted(res.members.members) == [0, 1, 2, 3, 4]

    k4 = Graph.from_edges(4, itertools.combinations(range(4), 2))
    res = hill_climb(k4, "random", np.random.default_rng(2))
    assert len(res.members) == 1


def test_hill_climb_rejects_dependent_init():
    with pytest.raises(ValueError):
        hill_climb(FIG1, VertexSubset.of(3, 4), np.random.default_rng(0))


def test_hill_climb_output_is_maximal_and_independent():
    for seed in range(10):
        g = erdos_renyi(10, 0.4, seed)
        res = hill_climb(g, "random", np.random.default_rng(seed))
        assert is_independent(g, res.members)
        for v in range(10):
            if v not in res.members:
                assert g.adjacency[v] & res.members.members  # no free vertex remains


def test_random_maximal_set_properties():
    for seed in range(10):
        g = erdos_renyi(9, 0.5, seed)
        s = random_maximal_independent_set(g, np.random.default_rng(seed))
        assert is_independent(g, s)
        for v in range(9):
            if v not in s:
                assert g.adjacency[v] & s.members


def test_classical_pqa_examples():
    rec = classical_pqa(FIG1, ClassicalPqaConfig(), np.random.default_rng(0))
    assert len(rec.final_vertices) == 3
    assert is_independent(FIG1, rec.final_vertices)

    rec = classical_pqa(K2, ClassicalPqaConfig(initial_size=2), np.random.default_rng(1))
    assert rec.exit_flag == EXIT_FULL
    assert len(rec.rounds) == 1
    assert len(rec.final_vertices) == 1

    edgeless = Graph.from_edges(5, [])
    rec = classical_pqa(edgeless, ClassicalPqaConfig(), np.random.default_rng(2))
    assert len(rec.final_vertices) == 5


def test_classical_pqa_trace_matches_quantum_twin():
    # same seed, same expansion stream: the round vertex sets agree on the
    # common prefix
    for seed in range(6):
        q = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(seed))
        c = classical_pqa(FIG1, ClassicalPqaConfig(), np.random.default_rng(seed))
        tq = [r.vertices for r in q.rounds]
        tc = [r.vertices for r in c.rounds]
        k = min(len(tq), len(tc))
        assert tq[:k] == tc[:k]


def test_classical_pqa_inherits_solutions_between_rounds():
    for seed in range(5):
        g = erdos_renyi(9, 0.4, seed)
        rec = classical_pqa(g, ClassicalPqaConfig(), np.random.default_rng(seed))
        # each round's solution size never shrinks: inherited starting point
        sizes = [r.f_value for r in rec.rounds]
        assert all(b >= a for a, b in zip(sizes, sizes[1:]))
        assert rec.exit_flag in (EXIT_STOP, EXIT_FULL)


def test_classical_pqa_reaches_beta_with_restarts():
    for seed in range(4):
        g = erdos_renyi(8, 0.5, seed)
        beta = brute_force_mis(g).independence_number
        best = 0
        for restart in range(30):
            rec = classical_pqa(
                g, ClassicalPqaConfig(), np.random.default_rng(1000 * seed + restart)
            )
            best = max(best, len(rec.final_vertices))
            if best == beta:
                break
        assert best == beta
