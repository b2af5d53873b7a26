"""Constrained-mixer variational solver for maximum independent set, with a
progressive subgraph-expansion algorithm, comparison baselines, and a
deterministic benchmark harness."""

__version__ = "0.1.0"

from .ansatz import (
    AnsatzParams,
    CircuitAccounting,
    QaoaPlusCircuit,
    account_circuit,
    run_penalty_qaoa,
    run_qaoa_plus,
)
from .baselines import (
    ClassicalPqaConfig,
    QlsConfig,
    classical_pqa,
    ds_qaoa_plus_run,
    hill_climb,
    qls_run,
    qls_subgraph,
)
from .errors import CapacityError, ConfigurationError, GenerationError, NumericError
from .graphs import (
    Graph,
    MisResult,
    VertexSubset,
    brute_force_mis,
    closeness,
    eccentricities,
    erdos_renyi,
    induced_subgraph,
    is_independent,
    min_degree_vertex,
    random_regular,
)
from .metrics import (
    ResourceLedger,
    RuntimeModelConfig,
    approximation_ratio,
    estimate_runs_to_target,
    modeled_runtime,
    oar_aar,
    shallowest_depth_achieving,
    total_resources,
)
from .optimize import OptimizerConfig, RunResult, nelder_mead_maximize, single_run
from .progressive import (
    PqaConfig,
    PqaRunRecord,
    build_initial_subgraph,
    check_stop,
    expand_edges,
    next_vertex,
    pqa_run,
)
from .simulator import (
    StateVector,
    apply_partial_mixer,
    apply_phase_separator,
    apply_transverse_mixer,
    expectation_value,
    new_state,
    penalty_diagonal,
    sample,
    vertex_count_diagonal,
)

__all__ = [
    "AnsatzParams",
    "CapacityError",
    "CircuitAccounting",
    "ClassicalPqaConfig",
    "ConfigurationError",
    "GenerationError",
    "Graph",
    "MisResult",
    "NumericError",
    "OptimizerConfig",
    "PqaConfig",
    "PqaRunRecord",
    "QaoaPlusCircuit",
    "QlsConfig",
    "ResourceLedger",
    "RunResult",
    "RuntimeModelConfig",
    "StateVector",
    "VertexSubset",
    "account_circuit",
    "apply_partial_mixer",
    "apply_phase_separator",
    "apply_transverse_mixer",
    "approximation_ratio",
    "brute_force_mis",
    "build_initial_subgraph",
    "check_stop",
    "classical_pqa",
    "closeness",
    "ds_qaoa_plus_run",
    "eccentricities",
    "erdos_renyi",
    "estimate_runs_to_target",
    "expand_edges",
    "expectation_value",
    "hill_climb",
    "induced_subgraph",
    "is_independent",
    "min_degree_vertex",
    "modeled_runtime",
    "nelder_mead_maximize",
    "new_state",
    "next_vertex",
    "oar_aar",
    "penalty_diagonal",
    "pqa_run",
    "qls_run",
    "qls_subgraph",
    "random_regular",
    "run_penalty_qaoa",
    "run_qaoa_plus",
    "sample",
    "shallowest_depth_achieving",
    "single_run",
    "total_resources",
    "vertex_count_diagonal",
]
