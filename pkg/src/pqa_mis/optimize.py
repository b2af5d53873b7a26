"""Derivative-free outer loop: Nelder-Mead maximization of circuit
expectations, with the iteration/evaluation accounting the benchmarks report.

One iteration is one full simplex update cycle; the run stops when the
best-so-far value improves by at most epsilon across a cycle, or at the
iteration cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ansatz import QAOA_PLUS, AnsatzParams, CircuitAccounting, QaoaPlusCircuit, account_circuit
from .errors import NumericError
from .graphs import Graph, VertexSubset
from .simulator import StateVector, argmax_basis_index

# standard simplex coefficients: reflection, expansion, contraction, shrink
_ALPHA, _GAMMA, _RHO, _SIGMA = 1.0, 2.0, 0.5, 0.5

RANDOM_INIT = "random"


@dataclass(frozen=True)
class OptimizerConfig:
    """``patience`` is the number of consecutive cycles with improvement at
    most epsilon before stopping; 1 stops at the first stalled cycle."""

    epsilon: float = 1e-3
    max_iterations: int = 500
    initial_step: float = 0.1
    patience: int = 5

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.initial_step <= 0:
            raise ValueError(f"initial_step must be positive, got {self.initial_step}")
        if self.patience < 1:
            raise ValueError(f"patience must be >= 1, got {self.patience}")


@dataclass
class MaximizeResult:
    best_x: np.ndarray
    best_value: float
    iterations: int
    evaluations: int
    best_history: list[float] = field(default_factory=list)


@dataclass
class RunResult:
    """One optimization run: best point found plus run bookkeeping."""

    best_params: AnsatzParams
    best_F: float
    iterations: int
    evaluations: int
    best_bitstring: VertexSubset
    accounting: CircuitAccounting
    final_state: StateVector
    init_params: AnsatzParams


def nelder_mead_maximize(objective, x0: np.ndarray, cfg: OptimizerConfig) -> MaximizeResult:
    """Maximize a deterministic objective from x0; see the module docstring
    for the termination rule. Raises NumericError on non-finite values."""
    x0 = np.asarray(x0, dtype=np.float64)
    dim = x0.size
    best_x = x0.copy()
    best_value = -math.inf
    evaluations = 0

    def f(x: np.ndarray) -> float:
        nonlocal best_x, best_value, evaluations
        value = objective(x)
        evaluations += 1
        if not math.isfinite(value):
            raise NumericError(f"objective returned {value} at {x.tolist()}")
        if value > best_value:
            best_value = value
            best_x = x.copy()
        return -value

    points = [x0.copy()]
    for i in range(dim):
        x = x0.copy()
        x[i] += cfg.initial_step
        points.append(x)
    values = [f(x) for x in points]

    iterations = 0
    stalled = 0
    best_history: list[float] = []
    while iterations < cfg.max_iterations:
        before = best_value
        order = np.argsort(values, kind="stable")
        points = [points[i] for i in order]
        values = [values[i] for i in order]

        centroid = np.mean(points[:-1], axis=0)
        reflected = centroid + _ALPHA * (centroid - points[-1])
        f_reflected = f(reflected)
        if values[0] <= f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[0]:
            expanded = centroid + _GAMMA * (reflected - centroid)
            f_expanded = f(expanded)
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
        else:
            if f_reflected < values[-1]:
                contracted = centroid + _RHO * (reflected - centroid)
                f_contracted = f(contracted)
                accept = f_contracted <= f_reflected
            else:
                contracted = centroid + _RHO * (points[-1] - centroid)
                f_contracted = f(contracted)
                accept = f_contracted < values[-1]
            if accept:
                points[-1], values[-1] = contracted, f_contracted
            else:
                for i in range(1, dim + 1):
                    points[i] = points[0] + _SIGMA * (points[i] - points[0])
                    values[i] = f(points[i])

        iterations += 1
        best_history.append(best_value)
        stalled = stalled + 1 if best_value - before <= cfg.epsilon else 0
        if stalled >= cfg.patience:
            break

    return MaximizeResult(best_x, best_value, iterations, evaluations, best_history)


def random_params(p: int, rng: np.random.Generator) -> AnsatzParams:
    """Uniform draw over one ansatz period: gammas in [0, 2pi), betas in [0, pi)."""
    gammas = tuple(float(v) for v in rng.uniform(0.0, 2.0 * np.pi, size=p))
    betas = tuple(float(v) for v in rng.uniform(0.0, np.pi, size=p))
    return AnsatzParams(gammas, betas)


def optimize_circuit(
    circuit: QaoaPlusCircuit, init: AnsatzParams, cfg: OptimizerConfig
) -> RunResult:
    """Run the simplex loop against a compiled circuit, then extract the
    solution readout (most probable basis state, feasible by construction)."""
    res = nelder_mead_maximize(circuit.expectation_of_vector, init.to_vector(), cfg)
    best_params = AnsatzParams.from_vector(res.best_x)
    state = circuit.evolve(best_params)
    best_f = circuit.expectation(best_params)
    return RunResult(
        best_params=best_params,
        best_F=best_f,
        iterations=res.iterations,
        evaluations=res.evaluations,
        best_bitstring=VertexSubset.from_index(argmax_basis_index(state)),
        accounting=account_circuit(circuit.graph, best_params.p, QAOA_PLUS),
        final_state=state,
        init_params=init,
    )


def single_run(
    g: Graph,
    p: int,
    init: AnsatzParams | str,
    cfg: OptimizerConfig,
    rng: np.random.Generator,
) -> RunResult:
    """One optimization run of the constrained-mixer circuit on g."""
    params0 = random_params(p, rng) if init == RANDOM_INIT else init
    if params0.p != p:
        raise ValueError(f"initial params have depth {params0.p}, expected {p}")
    return optimize_circuit(QaoaPlusCircuit(g), params0, cfg)
