"""Hyperplane covers of the hypercube {0,1}^n.

Exact predicates for covers, skew covers, nondegenerate covers and
edge-slicing families; the explicit constructions; the reduction from
bounded-coefficient slicing families to nondegenerate covers; a checked
execution of the n/2 lower-bound argument; and exact minimum searches at
small dimension.
"""

from .constructions import axis_slicing_family, sum_layer_cover, tight_cover, trivial_cover
from .errors import (
    BudgetError,
    CoefficientBoxError,
    DimensionError,
    HypercoverError,
    InfeasibleError,
    InputError,
    InternalConsistencyError,
    NondegeneracyError,
    NotSlicingError,
)
from .family import (
    Family,
    IncidenceIndex,
    Violation,
    find_uncovered,
    find_unsliced_edge,
    find_violation,
    incidence,
    is_cover,
    is_nondegenerate_cover,
    is_skew_cover,
    is_slicing_family,
    max_abs_coefficient,
)
from .geometry import (
    Edge,
    EdgeSet,
    Hyperplane,
    SupportMask,
    Vertex,
    VertexSet,
    canonicalize,
    contains,
    covered_set,
    evaluate,
    hyperplane,
    is_skew,
    sliced_set,
    slices,
    support,
)
from .reduction import expand_hyperplane, floor_rational, reduce_slicing_to_cover
from .search import min_cover, min_slicing, verify_alon_furedi
from .witness import WitnessReport, format_trace, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "axis_slicing_family",
    "BudgetError",
    "canonicalize",
    "CoefficientBoxError",
    "contains",
    "covered_set",
    "DimensionError",
    "Edge",
    "EdgeSet",
    "evaluate",
    "expand_hyperplane",
    "Family",
    "find_uncovered",
    "find_unsliced_edge",
    "find_violation",
    "floor_rational",
    "format_trace",
    "HypercoverError",
    "Hyperplane",
    "hyperplane",
    "incidence",
    "IncidenceIndex",
    "InfeasibleError",
    "InputError",
    "InternalConsistencyError",
    "is_cover",
    "is_nondegenerate_cover",
    "is_skew",
    "is_skew_cover",
    "is_slicing_family",
    "max_abs_coefficient",
    "min_cover",
    "min_slicing",
    "NondegeneracyError",
    "NotSlicingError",
    "reduce_slicing_to_cover",
    "run_pipeline",
    "sliced_set",
    "slices",
    "sum_layer_cover",
    "support",
    "SupportMask",
    "tight_cover",
    "trivial_cover",
    "verify_alon_furedi",
    "Vertex",
    "VertexSet",
    "Violation",
    "WitnessReport",
]
