"""Configuration-model random graphs with a given degree sequence.

Seeded stub-matching samplers, exact connection and self-loop probabilities
from the finite inclusion-exclusion series, an exhaustive matching oracle and
Monte Carlo estimators to cross-check them.
"""
from ._backend import BACKEND
from .analytic import (
    EnsembleSize,
    ProbabilityResult,
    connection_probability,
    connection_probability_sparse,
    directed_connection_probability,
    directed_connection_probability_sparse,
    directed_ensemble_log_size,
    ensemble_log_size,
    expected_degree_identity,
    format_fraction,
    self_loop_probability,
)
from .degrees import (
    DegreeDistributionSpec,
    DegreeSequence,
    DirectedDegreeSequence,
    parse_distribution,
    read_degrees,
    read_directed_degrees,
    sample_degree_sequence,
    validate_directed,
    validate_undirected,
)
from .errors import (
    ConfigProbError,
    InvalidSpec,
    LengthMismatch,
    NegativeDegree,
    OddStubTotal,
    SameVertex,
    TooLarge,
    UnbalancedStubs,
    VertexOutOfRange,
)
from .montecarlo import (
    MonteCarloEstimate,
    estimate_connection_probability,
    estimate_directed_connection_probability,
    estimate_self_loop_probability,
)
from .oracle import (
    OracleReport,
    exact_connection_probability,
    exact_directed_connection_probability,
    exact_self_loop_probability,
)
from .sampler import (
    MultiGraph,
    child_seed,
    is_simple,
    multiplicity,
    sample_configuration,
    sample_directed_configuration,
)

__version__ = "0.1.0"
