"""Dense statevector simulator.

Basis convention: amplitude index i encodes the bitstring x with
x_u = (i >> u) & 1, so vertex u of a graph is qubit u of the register.
Diagonal objectives are plain float arrays of per-basis-state energies h(x);
the figure of merit everywhere is F = -<H> (expected selected-vertex count
for the vertex-count target).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .graphs import Graph, popcount_table

MAX_QUBITS = 24
NORM_TOLERANCE = 1e-10


@dataclass
class StateVector:
    """2^n complex amplitudes, mutated in place by the gate operations."""

    n_qubits: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        a = self.amplitudes
        return float(np.sum(a.real**2 + a.imag**2))

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real**2 + a.imag**2


def new_state(n: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    """The all-zeros state |0...0> (the empty vertex set, always feasible)."""
    if not 1 <= n <= max_qubits:
        raise CapacityError(f"qubit count {n} outside [1, {max_qubits}]")
    amplitudes = np.zeros(1 << n, dtype=np.complex128)
    amplitudes[0] = 1.0
    return StateVector(n, amplitudes)


def basis_bitstring(index: int, n: int) -> str:
    return "".join("1" if (index >> u) & 1 else "0" for u in range(n))


def vertex_count_diagonal(n: int) -> np.ndarray:
    """Diagonal of the constraint-free target: h(x) = -|x|, so -h counts
    selected vertices and the minimum over independent strings is -beta(G)."""
    return -popcount_table(n).astype(np.float64)


def penalty_diagonal(g: Graph, penalty: float) -> np.ndarray:
    """Diagonal of the penalized target: h(x) = -|x| + penalty * (#violated edges)."""
    h = vertex_count_diagonal(g.n).copy()
    idx = np.arange(1 << g.n, dtype=np.int64)
    for u, v in g.edges:
        h += penalty * ((idx >> u) & (idx >> v) & 1)
    return h


def _check_sizes(state: StateVector, diag: np.ndarray) -> None:
    if diag.shape != state.amplitudes.shape:
        raise ValueError(
            f"diagonal has {diag.shape[0] if diag.ndim else 0} entries, "
            f"state has {state.amplitudes.shape[0]}"
        )


def apply_phase_separator(state: StateVector, diag: np.ndarray, gamma: float) -> StateVector:
    """amplitude[x] *= exp(-i * gamma * h(x)); exactly norm-preserving."""
    _check_sizes(state, diag)
    state.amplitudes *= np.exp(-1j * gamma * diag)
    return state


def apply_partial_mixer(
    state: StateVector, u: int, neighbors: list[int] | frozenset[int], beta: float
) -> StateVector:
    """Neighborhood-controlled X rotation on qubit u.

    On each index pair differing only in bit u whose neighbor bits are all
    zero, applies [[cos b, -i sin b], [-i sin b, cos b]]; pairs with any
    neighbor bit set are left untouched, so independence is preserved.
    """
    n = state.n_qubits
    if u in neighbors:
        raise ValueError(f"qubit {u} cannot be its own neighbor")
    if not 0 <= u < n or any(not 0 <= v < n for v in neighbors):
        raise ValueError(f"qubit index out of range for n={n}")
    mask = 0
    for v in neighbors:
        mask |= 1 << v
    idx = np.arange(1 << n, dtype=np.int64)
    lo = np.nonzero((idx & (mask | (1 << u))) == 0)[0]
    hi = lo + (1 << u)
    amp = state.amplitudes
    a0 = amp[lo]
    a1 = amp[hi]
    c = np.cos(beta)
    s = np.sin(beta)
    amp[lo] = c * a0 - 1j * s * a1
    amp[hi] = c * a1 - 1j * s * a0
    return state


def apply_transverse_mixer(state: StateVector, beta: float) -> StateVector:
    """Uniform-field mixer: on every qubit, [[cos b, i sin b], [i sin b, cos b]]."""
    n = state.n_qubits
    c = np.cos(beta)
    s = np.sin(beta)
    amp = state.amplitudes
    for u in range(n):
        view = amp.reshape(1 << (n - 1 - u), 2, 1 << u)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = c * a0 + 1j * s * a1
        view[:, 1, :] = c * a1 + 1j * s * a0
    return state


def expectation_value(state: StateVector, diag: np.ndarray) -> float:
    """F = -sum_x |a_x|^2 h(x); the expected selected-vertex count for the
    vertex-count diagonal."""
    _check_sizes(state, diag)
    return float(-np.dot(state.probabilities(), diag))


def argmax_basis_index(state: StateVector) -> int:
    """Most probable basis state; ties resolve to the lowest index."""
    return int(np.argmax(state.probabilities()))


def sample(state: StateVector, shots: int, rng: np.random.Generator) -> dict[str, int]:
    """Multinomial draw from |a|^2, keyed by bitstring x_0 x_1 ... x_{n-1}."""
    if shots < 1:
        raise ValueError(f"need shots >= 1, got {shots}")
    probs = state.probabilities()
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    n = state.n_qubits
    return {
        basis_bitstring(i, n): int(c) for i, c in enumerate(counts) if c
    }


def dump_amplitudes(state: StateVector) -> str:
    """Debug dump: one 'index real imag' line per amplitude."""
    return "\n".join(
        f"{i} {a.real:.17g} {a.imag:.17g}" for i, a in enumerate(state.amplitudes)
    )
