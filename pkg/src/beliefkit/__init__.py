"""Belief functions on finite frames.

Mass functions over subset lattices, the bel/pl transforms, the classical
conditioning rules (open and closed Dempster, Yager-Kohlas, geometric,
specialization, imaging, upper/lower Bayesian), conjunctive combination, the
credal-set reading with exact vertex enumeration, and the pignistic
transformation. A CLI (``beliefkit``) exposes everything on JSON documents.
"""

from .combination import conjunctive, dempster_combine
from .conditioning import (
    ClosestWorldMap,
    ConditioningOutcome,
    SpecializationMatrix,
    TransferMatrix,
    apply_specialization,
    canonical_specialization,
    condition_closed,
    condition_geometric,
    condition_open,
    condition_yager_kohlas,
    image_closest,
    image_general,
    transfer_matrix_for,
)
from .credal import (
    CredalVertex,
    IntervalBound,
    bounds,
    credal_vertices,
    fh_conditional,
    oracle_conditional,
)
from .documents import (
    bba_to_document,
    parse_bba,
    parse_closest_map,
    parse_specialization_matrix,
    parse_transfer_matrix,
    serialize_bba,
)
from .errors import DocumentError, NoSolutionError
from .frames import EMPTY, Frame, bit_members, subsets_of
from .mass import (
    CLOSED,
    OPEN,
    BeliefView,
    MassFunction,
    PignisticDistribution,
    RandomSetCounts,
    belief,
    from_counts,
    masses_from_belief,
    normalize,
    pignistic,
)
from .voting import demo_voting

__version__ = "0.1.0"

__all__ = [
    "BeliefView",
    "CLOSED",
    "ClosestWorldMap",
    "ConditioningOutcome",
    "CredalVertex",
    "DocumentError",
    "EMPTY",
    "Frame",
    "IntervalBound",
    "MassFunction",
    "NoSolutionError",
    "OPEN",
    "PignisticDistribution",
    "RandomSetCounts",
    "SpecializationMatrix",
    "TransferMatrix",
    "apply_specialization",
    "bba_to_document",
    "belief",
    "bit_members",
    "bounds",
    "canonical_specialization",
    "condition_closed",
    "condition_geometric",
    "condition_open",
    "condition_yager_kohlas",
    "conjunctive",
    "credal_vertices",
    "dempster_combine",
    "demo_voting",
    "fh_conditional",
    "from_counts",
    "image_closest",
    "image_general",
    "masses_from_belief",
    "normalize",
    "oracle_conditional",
    "parse_bba",
    "parse_closest_map",
    "parse_specialization_matrix",
    "parse_transfer_matrix",
    "pignistic",
    "serialize_bba",
    "subsets_of",
    "transfer_matrix_for",
]
