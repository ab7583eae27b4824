"""Member selection under dynamic size and similarity constraints."""

from ._core import (
    ConstraintPair,
    Session,
    SimGraph,
    Solution,
    avg_similarity,
    average_peel,
    cross_weight,
    degree_peel,
    exact_msp,
    incident_weight,
    is_feasible,
    modified_sgsel,
    pair_weight,
    random_peel,
    read_msg1,
    sgsel,
    total_weight,
    write_msg1,
)

__all__ = [
    "ConstraintPair",
    "Session",
    "SimGraph",
    "Solution",
    "avg_similarity",
    "average_peel",
    "cross_weight",
    "degree_peel",
    "exact_msp",
    "incident_weight",
    "is_feasible",
    "modified_sgsel",
    "pair_weight",
    "random_peel",
    "read_msg1",
    "sgsel",
    "total_weight",
    "write_msg1",
]
