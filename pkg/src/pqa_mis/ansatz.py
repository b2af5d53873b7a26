"""Depth-p circuits for both MIS encodings, plus gate/depth/qubit accounting.

The constrained-mixer circuit alternates a vertex-count phase layer with one
neighborhood-controlled partial mixer per vertex (ascending vertex order).
The printed rotation angle convention is honored at this layer: a layer
parameter beta_i reaches the simulator kernel as 2*beta_i.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, popcount_table
from .simulator import (
    StateVector,
    apply_partial_mixer,
    apply_phase_separator,
    apply_transverse_mixer,
    new_state,
    penalty_diagonal,
    vertex_count_diagonal,
)

DEFAULT_PENALTY = 2.0

QAOA_PLUS = "qaoa_plus"
PENALTY = "penalty"


@dataclass(frozen=True)
class AnsatzParams:
    """The 2p variational angles of a depth-p circuit."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ValueError(
                f"need equal, non-empty angle lists; got {len(self.gammas)} gammas, "
                f"{len(self.betas)} betas"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_vector(cls, vec: np.ndarray) -> "AnsatzParams":
        if len(vec) % 2 != 0:
            raise ValueError(f"parameter vector length {len(vec)} is not 2p")
        p = len(vec) // 2
        return cls(tuple(float(v) for v in vec[:p]), tuple(float(v) for v in vec[p:]))

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)


@dataclass(frozen=True)
class CircuitAccounting:
    """Structural per-circuit resource counts.

    Depth uses one unit per sequential op, with a whole phase layer as one
    unit and each neighborhood-controlled rotation as three units (its
    compute/rotate/uncompute decomposition around the shared ancilla).
    """

    qubits_logical: int
    qubits_ancilla: int
    multi_ctrl_rx_gates: int
    single_qubit_gates: int
    two_qubit_zz_gates: int
    circuit_depth: int

    @property
    def qubits_total(self) -> int:
        return self.qubits_logical + self.qubits_ancilla


class QaoaPlusCircuit:
    """Constrained-mixer circuit compiled for one graph.

    Precomputes, per vertex, the basis-index pairs its partial mixer touches,
    so repeated evaluations during parameter optimization stay cheap.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.n
        self.size = 1 << n
        idx = np.arange(self.size, dtype=np.int64)
        self._popcount = popcount_table(n)
        self._popcount_f = self._popcount.astype(np.float64)
        self._pairs = []
        for u in range(n):
            mask = 1 << u
            for v in graph.adjacency[u]:
                mask |= 1 << v
            lo = np.nonzero((idx & mask) == 0)[0]
            self._pairs.append((lo, lo + (1 << u)))

    def evolve(self, params: AnsatzParams) -> StateVector:
        n = self.graph.n
        amp = np.zeros(self.size, dtype=np.complex128)
        amp[0] = 1.0
        layer_phases = np.arange(n + 1, dtype=np.float64)
        for gamma, beta in zip(params.gammas, params.betas):
            # e^{-i*gamma*h} with h = -|x|: phase table indexed by popcount
            amp *= np.exp(1j * gamma * layer_phases)[self._popcount]
            theta = 2.0 * beta
            c = np.cos(theta)
            ms = -1j * np.sin(theta)
            for lo, hi in self._pairs:
                a0 = amp[lo]
                a1 = amp[hi]
                amp[lo] = c * a0 + ms * a1
                amp[hi] = c * a1 + ms * a0
        return StateVector(n, amp)

    def expectation(self, params: AnsatzParams) -> float:
        amp = self.evolve(params).amplitudes
        return float(np.dot(amp.real**2 + amp.imag**2, self._popcount_f))

    def expectation_of_vector(self, vec: np.ndarray) -> float:
        return self.expectation(AnsatzParams.from_vector(vec))


def run_qaoa_plus(g: Graph, params: AnsatzParams) -> StateVector:
    """Reference execution through the simulator primitives: start at
    |0...0>, then per layer a phase separator followed by one partial mixer
    per vertex in ascending order (kernel angle 2*beta_i)."""
    state = new_state(g.n)
    diag = vertex_count_diagonal(g.n)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_phase_separator(state, diag, gamma)
        for u in range(g.n):
            apply_partial_mixer(state, u, g.adjacency[u], 2.0 * beta)
    return state


def run_penalty_qaoa(g: Graph, params: AnsatzParams, penalty: float = DEFAULT_PENALTY) -> StateVector:
    """Penalty-encoded circuit: uniform superposition start, penalized phase
    separator alternating with the uniform-field mixer.

    Output may place probability on dependent vertex sets; this encoding
    exists for constraint-violation demonstrations and is not benchmarked.
    """
    if penalty <= 1.0:
        warnings.warn(
            f"penalty weight {penalty} <= 1 cannot dominate the vertex reward; "
            "running anyway",
            stacklevel=2,
        )
    state = new_state(g.n)
    state.amplitudes[:] = 1.0 / np.sqrt(state.amplitudes.size)
    diag = penalty_diagonal(g, penalty)
    for gamma, beta in zip(params.gammas, params.betas):
        apply_phase_separator(state, diag, gamma)
        apply_transverse_mixer(state, beta)
    return state


def account_circuit(g: Graph, p: int, encoding: str = QAOA_PLUS) -> CircuitAccounting:
    """Structural gate/depth/qubit counts for a depth-p circuit on g."""
    if p < 1:
        raise ValueError(f"need depth p >= 1, got {p}")
    n = g.n
    if encoding == QAOA_PLUS:
        n_ctrl = sum(1 for u in range(n) if g.degree(u) >= 1)
        n_iso = n - n_ctrl
        return CircuitAccounting(
            qubits_logical=n,
            qubits_ancilla=1 if n_ctrl else 0,
            multi_ctrl_rx_gates=p * n_ctrl,
            single_qubit_gates=p * n_iso,
            two_qubit_zz_gates=0,
            circuit_depth=p * (1 + 3 * n_ctrl + n_iso),
        )
    if encoding == PENALTY:
        return CircuitAccounting(
            qubits_logical=n,
            qubits_ancilla=0,
            multi_ctrl_rx_gates=0,
            single_qubit_gates=2 * p * n,
            two_qubit_zz_gates=p * g.m,
            circuit_depth=p * (1 + n),
        )
    raise ValueError(f"unknown encoding {encoding!r}")
