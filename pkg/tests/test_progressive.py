import json

import numpy as np
import pytest

from pqa_mis.graphs import (
    Graph,
    VertexSubset,
    brute_force_mis,
    closeness,
    erdos_renyi,
    induced_subgraph,
    is_independent,
)
from pqa_mis.optimize import OptimizerConfig
from pqa_mis.progressive import (
    EXIT_FULL,
    EXIT_INIT,
    EXIT_NONE,
    EXIT_RESULT,
    EXIT_STOP,
    EdgeCheckCounter,
    PqaConfig,
    build_initial_subgraph,
    check_stop,
    closeness_minimizers,
    expand_edges,
    expansion_schedule,
    lookahead_score,
    next_vertex,
    pqa_run,
)

FIG1 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)])
K2 = Graph.from_edges(2, [(0, 1)])


def test_check_stop_truth_table():
    cases = [
        ([2.0, 2.05, 2.08], 0.1, True),
        ([1.0, 2.0, 2.05], 0.1, False),
        ([2.0, 2.0], 0.1, False),
        ([5.0], 0.1, False),
        ([1.0, 1.0, 1.05, 1.08], 0.1, True),  # only the last three matter
        ([2.0, 2.05, 2.3], 0.1, False),
    ]
    for history, xi, expected in cases:
        assert check_stop(history, xi) is expected


def test_closeness_minimizers_and_lookahead_walkthrough():
    current = VertexSubset.of(0, 1, 2)
    score, tied = closeness_minimizers(FIG1, current)
    assert score == 1 and tied == [3, 4]
    assert lookahead_score(FIG1, current, 3) == 2
    assert lookahead_score(FIG1, current, 4) == 2
    picks = {next_vertex(FIG1, current, np.random.default_rng(s)) for s in range(20)}
    assert picks == {3, 4}


def test_next_vertex_unique_minimizer_case():
    current = VertexSubset.of(0, 1, 3)
    score, tied = closeness_minimizers(FIG1, current)
    assert score == 1 and tied == [2]
    assert next_vertex(FIG1, current, np.random.default_rng(0)) == 2


def test_next_vertex_terminal_lookahead_and_edgeless():
    # adding the last candidate leaves no remaining candidates: score 0
    assert lookahead_score(K2, VertexSubset.of(0), 1) == 0

    edgeless = Graph.from_edges(4, [])
    picks = {
        next_vertex(edgeless, VertexSubset.of(1), np.random.default_rng(s))
        for s in range(30)
    }
    assert picks == {0, 2, 3}
    with pytest.raises(ValueError):
        next_vertex(K2, VertexSubset.of(0, 1), np.random.default_rng(0))


def test_next_vertex_is_global_closeness_minimizer():
    for seed in range(10):
        g = erdos_renyi(9, 0.4, seed)
        rng = np.random.default_rng(seed)
        current = VertexSubset.of(*(int(v) for v in rng.choice(9, 4, replace=False)))
        v = next_vertex(g, current, rng)
        best = min(
            closeness(g, current, c) for c in range(9) if c not in current
        )
        assert closeness(g, current, v) == best


def test_expand_edges_walkthrough():
    added = expand_edges(FIG1, VertexSubset.of(0, 1, 2), 3)
    assert added == [(0, 3)]
    added = expand_edges(FIG1, VertexSubset.of(0, 1, 3), 2)
    assert added == [(0, 2)]
    assert expand_edges(Graph.from_edges(3, []), VertexSubset.of(0, 1), 2) == []
    with pytest.raises(ValueError):
        expand_edges(FIG1, VertexSubset.of(0, 1), 1)


def test_expand_edges_consistent_with_induced_subgraph():
    for seed in range(5):
        g = erdos_renyi(8, 0.5, seed)
        current = VertexSubset.of(0, 2, 5)
        v = 6
        before, originals = induced_subgraph(g, current)
        added = expand_edges(g, current, v)
        after, _ = induced_subgraph(g, VertexSubset(current.members | {v}))
        before_orig = {(originals[a], originals[b]) for a, b in before.edges}
        assert len(after.edges) == len(before_orig) + len(added)


def test_build_initial_subgraph_examples():
    picks = {
        tuple(build_initial_subgraph(FIG1, 1, np.random.default_rng(s)))
        for s in range(20)
    }
    assert picks == {(1,), (2,)}

    full = build_initial_subgraph(FIG1, 5, np.random.default_rng(0))
    assert sorted(full.members) == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        build_initial_subgraph(FIG1, 6, np.random.default_rng(0))


def test_build_initial_subgraph_each_step_minimizes_closeness():
    # replay: every added vertex after the first must be a closeness minimizer
    for seed in range(10):
        g = erdos_renyi(9, 0.4, seed)
        rng = np.random.default_rng(seed)
        first = build_initial_subgraph(g, 1, rng)
        current = set(first.members)
        while len(current) < 4:
            vs = VertexSubset(frozenset(current))
            v = next_vertex(g, vs, rng)
            best = min(closeness(g, vs, c) for c in range(9) if c not in current)
            assert closeness(g, vs, v) == best
            current.add(v)


def test_expansion_schedule_yields_nested_sets_to_full_graph():
    for seed in range(5):
        g = erdos_renyi(7, 0.4, seed)
        steps = list(expansion_schedule(g, 3, np.random.default_rng(seed)))
        assert len(steps[0]) == 3
        assert len(steps[-1]) == 7
        for a, b in zip(steps, steps[1:]):
            assert a.members < b.members and len(b) == len(a) + 1


def test_expansion_schedule_counts_edge_checks_lazily():
    counter = EdgeCheckCounter()
    schedule = expansion_schedule(FIG1, 2, np.random.default_rng(0), counter)
    next(schedule)
    after_initial = counter.count
    assert after_initial > 0
    next(schedule)
    assert counter.count > after_initial


def test_tied_expansion_has_exactly_two_legal_continuations():
    # from {0,1,2} the only legal 4-vertex continuations are {0,1,2,3} and
    # {0,1,2,4}, with the matching connecting edge
    seen = set()
    for seed in range(30):
        v = next_vertex(FIG1, VertexSubset.of(0, 1, 2), np.random.default_rng(seed))
        assert v in (3, 4)
        added = expand_edges(FIG1, VertexSubset.of(0, 1, 2), v)
        assert added == [(0, v)]
        seen.add(v)
    assert seen == {3, 4}


def run_fig1(seed=5, **overrides):
    cfg = PqaConfig(p=1, optimizer=OptimizerConfig(), **overrides)
    return pqa_run(FIG1, cfg, np.random.default_rng(seed))


def test_pqa_rounds_nest_and_grow_by_one():
    for seed in range(6):
        rec = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(seed))
        for a, b in zip(rec.rounds, rec.rounds[1:]):
            sa, sb = set(a.vertices), set(b.vertices)
            assert sa < sb and len(sb) == len(sa) + 1


def test_pqa_beta_monotone_and_f_bounded_along_trace():
    for seed in range(6):
        rec = pqa_run(FIG1, PqaConfig(p=2), np.random.default_rng(seed))
        prev_beta = 0
        for r in rec.rounds:
            sub, _ = induced_subgraph(FIG1, VertexSubset.of(*r.vertices))
            beta = brute_force_mis(sub).independence_number
            assert beta >= prev_beta
            assert r.f_value <= beta + 1e-9
            prev_beta = beta


def test_pqa_final_solution_is_independent_in_original_graph():
    for seed in range(10):
        rec = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(seed))
        assert is_independent(FIG1, rec.final_vertices)


def test_pqa_parameter_transfer_is_exact():
    rec = pqa_run(FIG1, PqaConfig(p=2), np.random.default_rng(3))
    for prev, cur in zip(rec.rounds, rec.rounds[1:]):
        if prev.best_params is not None and cur.init_params is not None:
            assert cur.init_params == prev.best_params


def test_pqa_forced_init_exit():
    rec = run_fig1(init_exit_frac=1e9)
    assert rec.exit_flag == EXIT_INIT
    assert len(rec.rounds) == 2
    assert rec.rounds[-1].exit_flag == EXIT_INIT
    assert rec.rounds[-1].iterations == 0
    assert rec.rounds[-1].best_params is None
    # the returned solution comes from the first round
    assert rec.final_f == rec.rounds[0].f_value
    assert set(rec.final_vertices.members) <= set(rec.rounds[0].vertices)


def test_pqa_forced_result_exit_returns_running_best():
    rec = run_fig1(init_exit_frac=1e-12, result_exit_frac=1e9)
    assert rec.exit_flag == EXIT_RESULT
    optimized = [r for r in rec.rounds if r.best_params is not None]
    assert rec.final_f == max(r.f_value for r in optimized)


def test_pqa_full_graph_boundary():
    rec = pqa_run(K2, PqaConfig(p=1, initial_size=2), np.random.default_rng(1))
    assert rec.exit_flag == EXIT_FULL
    assert len(rec.rounds) == 1
    assert rec.rounds[0].exit_flag == EXIT_FULL


def test_pqa_stop_condition_path():
    # xi large enough that any three optimized rounds look stable
    rec = run_fig1(seed=8, xi=5.0, init_exit_frac=1e-12, result_exit_frac=1e-12)
    assert rec.exit_flag in (EXIT_STOP, EXIT_FULL)
    if rec.exit_flag == EXIT_STOP:
        optimized = [r.f_value for r in rec.rounds if r.best_params is not None]
        assert check_stop(optimized, 5.0)


def test_pqa_exit_flags_on_intermediate_rounds_are_none():
    rec = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(2))
    for r in rec.rounds[:-1]:
        assert r.exit_flag == EXIT_NONE
    assert rec.rounds[-1].exit_flag == rec.exit_flag


def test_pqa_ledger_fields():
    rec = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(2))
    assert rec.edge_checks > 0
    assert rec.iterations == sum(r.iterations for r in rec.rounds)
    assert rec.qubits_peak == max(r.qubits for r in rec.rounds)
    assert rec.qubits_sum == sum(r.qubits for r in rec.rounds)
    segments = rec.runtime_segments()
    assert len(segments) == len(rec.rounds)
    assert all(d > 0 and i >= 0 for d, i in segments)


def test_pqa_trace_lines_are_json():
    rec = pqa_run(FIG1, PqaConfig(p=1), np.random.default_rng(2))
    lines = rec.trace_lines().strip().splitlines()
    assert len(lines) == len(rec.rounds)
    first = json.loads(lines[0])
    assert set(first) >= {"vertices", "f_value", "iterations", "exit_flag"}


def test_pqa_run_deterministic_per_seed():
    a = pqa_run(FIG1, PqaConfig(p=2), np.random.default_rng(6))
    b = pqa_run(FIG1, PqaConfig(p=2), np.random.default_rng(6))
    assert [r.vertices for r in a.rounds] == [r.vertices for r in b.rounds]
    assert a.final_f == b.final_f
    assert a.final_vertices == b.final_vertices
    assert a.edge_checks == b.edge_checks


def test_pqa_config_validation():
    with pytest.raises(ValueError):
        PqaConfig(p=0)
    with pytest.raises(ValueError):
        PqaConfig(p=1, xi=0)
    with pytest.raises(ValueError):
        PqaConfig(p=1, initial_size=0)
    with pytest.raises(ValueError):
        PqaConfig(p=1, init_exit_frac=0)
