"""Interestingness-path optimization: exact scores, solvers, hardness gadgets and oracles."""

from .errors import (
    CycleError,
    DisjointnessError,
    InvalidPathError,
    IPathsError,
    MalformedWitnessError,
    MissingEdgesError,
    OracleLimitError,
    ParseError,
    TriviallySatisfiableError,
    ValidationError,
)
from .graph import (
    DirectedPath,
    Edge,
    PathCollection,
    PathPartition,
    WeightedDigraph,
    score_of_collection,
    score_of_path,
    split_by_signature,
    topological_order,
    validate_collection,
    validate_partition,
    validate_path,
)
from .score import ExactScore, Ordering, approx_decimal, compare
from .solvers import (
    Answer,
    SolverBudget,
    decide_ip,
    decide_kip,
    enumerate_k_paths,
    exact_ip,
    exact_kip,
    greedy_kip,
    max_ip_dag,
)

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "CycleError",
    "DirectedPath",
    "DisjointnessError",
    "Edge",
    "ExactScore",
    "IPathsError",
    "InvalidPathError",
    "MalformedWitnessError",
    "MissingEdgesError",
    "OracleLimitError",
    "Ordering",
    "ParseError",
    "PathCollection",
    "PathPartition",
    "SolverBudget",
    "TriviallySatisfiableError",
    "ValidationError",
    "WeightedDigraph",
    "approx_decimal",
    "compare",
    "decide_ip",
    "decide_kip",
    "enumerate_k_paths",
    "exact_ip",
    "exact_kip",
    "greedy_kip",
    "max_ip_dag",
    "score_of_collection",
    "score_of_path",
    "split_by_signature",
    "topological_order",
    "validate_collection",
    "validate_partition",
    "validate_path",
]
