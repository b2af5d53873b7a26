import numpy as np
import pytest

from pqa_mis.ansatz import AnsatzParams, QaoaPlusCircuit
from pqa_mis.errors import NumericError
from pqa_mis.graphs import Graph, brute_force_mis, erdos_renyi, is_independent
from pqa_mis.optimize import (
    OptimizerConfig,
    nelder_mead_maximize,
    random_params,
    single_run,
)

FIG1 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)])
K2 = Graph.from_edges(2, [(0, 1)])


def test_already_optimal_stays_put():
    cfg = OptimizerConfig(patience=1)
    res = nelder_mead_maximize(lambda x: -float(np.sum(x**2)), np.zeros(4), cfg)
    assert res.best_value == 0.0
    assert np.array_equal(res.best_x, np.zeros(4))
    assert res.iterations <= 5


def test_plateau_terminates_at_first_check():
    # constant objective: zero improvement, single-cycle patience stops at once
    cfg = OptimizerConfig(patience=1)
    res = nelder_mead_maximize(lambda x: 7.5, np.array([1.0, 2.0]), cfg)
    assert res.iterations == 1
    assert res.best_value == 7.5
    assert np.array_equal(res.best_x, [1.0, 2.0])  # first point evaluated wins ties


def test_iteration_cap_respected():
    cfg = OptimizerConfig(max_iterations=1, patience=1)
    res = nelder_mead_maximize(lambda x: float(np.sum(np.sin(x))), np.zeros(3), cfg)
    assert res.iterations == 1
    assert res.evaluations >= 4  # initial simplex plus at least one trial point


def test_nonfinite_objective_aborts():
    def bad(x):
        return float("nan")

    with pytest.raises(NumericError):
        nelder_mead_maximize(bad, np.zeros(2), OptimizerConfig())


def test_quadratic_maximum_found():
    cfg = OptimizerConfig(epsilon=1e-9, max_iterations=2000, patience=20)
    res = nelder_mead_maximize(
        lambda x: -float((x[0] - 1.5) ** 2 + (x[1] + 0.5) ** 2), np.zeros(2), cfg
    )
    assert res.best_value > -1e-6
    assert np.allclose(res.best_x, [1.5, -0.5], atol=1e-3)


def test_best_history_is_monotone():
    rng = np.random.default_rng(0)
    circuit = QaoaPlusCircuit(erdos_renyi(6, 0.5, 3))
    res = nelder_mead_maximize(
        circuit.expectation_of_vector,
        random_params(2, rng).to_vector(),
        OptimizerConfig(),
    )
    hist = res.best_history
    assert len(hist) == res.iterations
    assert all(b >= a for a, b in zip(hist, hist[1:]))


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(epsilon=0)
    with pytest.raises(ValueError):
        OptimizerConfig(max_iterations=0)
    with pytest.raises(ValueError):
        OptimizerConfig(initial_step=0)
    with pytest.raises(ValueError):
        OptimizerConfig(patience=0)


def k2_depth1_expectation(beta):
    # closed form for the two-vertex instance at depth 1: after both
    # neighborhood-controlled rotations with kernel angle t = 2*beta,
    # F = sin^2(t) * (1 + cos^2(t))
    t = 2 * beta
    return np.sin(t) ** 2 * (1 + np.cos(t) ** 2)


def test_k2_landscape_matches_closed_form_and_grid_oracle():
    circuit = QaoaPlusCircuit(K2)
    grid_best = 0.0
    for beta in np.linspace(0, np.pi, 100):
        for gamma in np.linspace(0, 2 * np.pi, 100):
            f = circuit.expectation(AnsatzParams((float(gamma),), (float(beta),)))
            assert abs(f - k2_depth1_expectation(beta)) < 1e-12
            grid_best = max(grid_best, f)
    assert abs(grid_best - 1.0) < 1e-3  # grid-scan oracle: optimum F* = 1


def test_k2_optimizer_reaches_oracle_value():
    best = 0.0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        res = single_run(K2, 1, "random", OptimizerConfig(), rng)
        best = max(best, res.best_F)
    assert best >= 0.99


def test_single_vertex_graph_reaches_one():
    g = Graph.from_edges(1, [])
    cfg = OptimizerConfig(epsilon=1e-9, max_iterations=2000, patience=10)
    res = single_run(g, 1, "random", cfg, np.random.default_rng(3))
    assert res.best_F >= 1 - 1e-6


def test_single_run_contract():
    rng = np.random.default_rng(9)
    cfg = OptimizerConfig()
    res = single_run(FIG1, 2, "random", cfg, rng)
    assert res.iterations <= cfg.max_iterations
    assert res.best_params.p == 2
    assert res.init_params.p == 2
    assert is_independent(FIG1, res.best_bitstring)
    # reported best equals a re-evaluation at the best parameters
    circuit = QaoaPlusCircuit(FIG1)
    assert abs(res.best_F - circuit.expectation(res.best_params)) < 1e-9
    assert res.accounting.qubits_total == 6


def test_single_run_deterministic():
    a = single_run(FIG1, 2, "random", OptimizerConfig(), np.random.default_rng(21))
    b = single_run(FIG1, 2, "random", OptimizerConfig(), np.random.default_rng(21))
    assert a.best_params == b.best_params
    assert a.best_F == b.best_F
    assert a.iterations == b.iterations
    assert a.evaluations == b.evaluations
    assert a.best_bitstring == b.best_bitstring


def test_single_run_with_cap_one_returns_initial_region():
    cfg = OptimizerConfig(max_iterations=1)
    res = single_run(FIG1, 1, "random", cfg, np.random.default_rng(4))
    assert res.iterations == 1


def test_random_params_cover_period():
    rng = np.random.default_rng(11)
    draws = [random_params(2, rng) for _ in range(300)]
    gammas = np.array([p.gammas for p in draws]).ravel()
    betas = np.array([p.betas for p in draws]).ravel()
    assert gammas.min() >= 0 and gammas.max() < 2 * np.pi and gammas.max() > 5.5
    assert betas.min() >= 0 and betas.max() < np.pi and betas.max() > 2.8


def test_fig1_depth3_high_quality_params_exist():
    best = 0.0
    for seed in range(10):
        res = single_run(FIG1, 3, "random", OptimizerConfig(), np.random.default_rng(seed))
        best = max(best, res.best_F)
        if best >= 2.9:
            break
    assert best >= 2.9  # ratio >= 0.95 of the optimum 3


def test_fig1_oar_trend_with_depth():
    beta_g = brute_force_mis(FIG1).independence_number
    oar = {}
    for p in (1, 2, 3):
        best = 0.0
        for run in range(100):
            rng = np.random.default_rng(1000 * p + run)
            res = single_run(FIG1, p, "random", OptimizerConfig(), rng)
            best = max(best, res.best_F / beta_g)
        oar[p] = best
    assert oar[1] <= oar[2] + 0.02
    assert oar[2] <= oar[3] + 0.02
