"""Approximation-ratio statistics, run-count estimation, resource totaling,
and the hardware-time model used for cross-algorithm runtime comparisons."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class RuntimeModelConfig:
    """Hardware-time constants: state preparation plus one measurement,
    one gate evolution, one classical edge check, and the measurement
    repetitions per expectation estimate."""

    t_prep_plus_meas: float = 1e-3
    t_gate: float = 1e-8
    t_edge_check: float = 3.1226e-4
    shots: int = 1000

    def __post_init__(self):
        if min(self.t_prep_plus_meas, self.t_gate, self.t_edge_check) <= 0:
            raise ValueError("all time constants must be positive")
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")


@dataclass(frozen=True)
class ResourceLedger:
    """Per-run (or totaled) resource figures; additive under merge."""

    runs: float = 0.0
    iterations: float = 0.0
    evaluations: float = 0.0
    qubits: float = 0.0
    multi_ctrl_rx_gates: float = 0.0
    modeled_runtime: float = 0.0

    def __post_init__(self):
        for name in (
            "runs",
            "iterations",
            "evaluations",
            "qubits",
            "multi_ctrl_rx_gates",
            "modeled_runtime",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def merge(self, other: "ResourceLedger") -> "ResourceLedger":
        return ResourceLedger(
            runs=self.runs + other.runs,
            iterations=self.iterations + other.iterations,
            evaluations=self.evaluations + other.evaluations,
            qubits=self.qubits + other.qubits,
            multi_ctrl_rx_gates=self.multi_ctrl_rx_gates + other.multi_ctrl_rx_gates,
            modeled_runtime=self.modeled_runtime + other.modeled_runtime,
        )


def approximation_ratio(f: float, f_max: float) -> float:
    """F / F_max; 1.0 means the exact optimum."""
    if f_max <= 0:
        raise ValueError(f"F_max must be positive, got {f_max}")
    return f / f_max


def oar_aar(ratios: Sequence[float]) -> tuple[float, float]:
    """(best, mean) approximation ratio over a set of optimization runs."""
    if not ratios:
        raise ValueError("need at least one ratio")
    return max(ratios), sum(ratios) / len(ratios)


def estimate_runs_to_target(success_count: int, total_runs: int) -> float | None:
    """Expected runs until one reaches the target: the reciprocal of the
    empirical success probability; None when no run succeeded."""
    if total_runs < 1:
        raise ValueError(f"total_runs must be >= 1, got {total_runs}")
    if success_count == 0:
        return None
    return total_runs / success_count


def shallowest_depth_achieving(
    oar_by_depth: Mapping[int, float], target_ar: float
) -> int | None:
    """Minimum depth whose best ratio reaches the target; None when none does."""
    if not oar_by_depth:
        raise ValueError("empty depth table")
    reaching = [p for p, oar in oar_by_depth.items() if oar >= target_ar]
    return min(reaching) if reaching else None


def total_resources(
    ledgers: Sequence[ResourceLedger], expected_runs: float
) -> ResourceLedger:
    """Expected total consumption: expected runs times the per-run mean of
    every field."""
    if not ledgers:
        raise ValueError("need at least one per-run ledger")
    k = len(ledgers)
    return ResourceLedger(
        runs=expected_runs * sum(b.runs for b in ledgers) / k,
        iterations=expected_runs * sum(b.iterations for b in ledgers) / k,
        evaluations=expected_runs * sum(b.evaluations for b in ledgers) / k,
        qubits=expected_runs * sum(b.qubits for b in ledgers) / k,
        multi_ctrl_rx_gates=expected_runs
        * sum(b.multi_ctrl_rx_gates for b in ledgers)
        / k,
        modeled_runtime=expected_runs * sum(b.modeled_runtime for b in ledgers) / k,
    )


def modeled_runtime(
    segments: Iterable[tuple[int, int]],
    cfg: RuntimeModelConfig,
    edge_checks: int = 0,
) -> float:
    """Modeled wall-clock seconds of one run.

    Each (circuit_depth, iterations) segment contributes
    (t_prep_plus_meas + depth * t_gate) * shots * iterations; edge checks
    add their classical time on top. Single-circuit algorithms pass one
    segment; staged algorithms pass one per stage or local solve.
    """
    quantum = 0.0
    for depth, iterations in segments:
        if depth < 0 or iterations < 0:
            raise ValueError("segments must have non-negative depth and iterations")
        single_rep = cfg.t_prep_plus_meas + depth * cfg.t_gate
        quantum += single_rep * cfg.shots * iterations
    if edge_checks < 0:
        raise ValueError("edge_checks must be non-negative")
    return quantum + edge_checks * cfg.t_edge_check
