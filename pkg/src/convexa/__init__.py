"""Convexity decisions and certified 1-D/2-D realizations for combinatorial
neural codes with at most three maximal codewords.

The pipeline: parse a code, ``decide`` convexity through the local-obstruction
scan, and—when convex—construct an explicit open convex realization on the
line or in the plane, certified exactly by an independent rational-arithmetic
verifier.
"""

from .codes import (
    EMPTY_WORD,
    MAX_NEURONS,
    NeuralCode,
    SimplicialComplex,
    closure,
    facet_intersections,
    is_max_intersection_complete,
    is_subword,
    link,
    maximal_codewords,
    nerve,
    parse_code,
    parse_word,
    word_ids,
    word_key,
    word_str,
)
from .decision import (
    CONVEX,
    DIM_AT_MOST_2,
    DIM_EXACTLY_1,
    DIM_EXACTLY_2,
    MAX_INTERSECTION_CASE,
    NOT_CONVEX,
    ORACLE_MAX_NEURONS,
    PATH_CASE,
    UNSUPPORTED,
    RealizationPlan,
    Verdict,
    brute_force_1d_realizable,
    choose_parents,
    decide,
)
from .errors import (
    AlreadyRealized,
    ConvexaError,
    InvalidWitness,
    NoDedicatedVertex,
    NoParent,
    NotAFace,
    NotAnIntersection,
    NotMaxIntersectionComplete,
    ParseError,
    RefineExhausted,
    TooManyFacets,
    WrongFacetCount,
)
from .geometry import ConvexPolygon, HalfPlane, RationalPoint, pt
from .realize1d import (
    RationalInterval,
    Realization1D,
    construct_base_1d,
    construct_min_code_1d,
    realized_code_1d,
    region_sequence,
    witnesses_1d,
)
from .realize2d import (
    Cut,
    Realization2D,
    fatten,
    refine_budget,
    triangle_construction,
)
from .realize2d import slice as slice_extras
from .topology import (
    ObstructionReport,
    PathOfFacetsWitness,
    link_contractible_3max,
    local_obstructions,
    minimal_code,
    path_of_facets,
)
from .verifier2d import WitnessedCode, grid_sample_code, realized_code_2d

__version__ = "0.1.0"

__all__ = [
    "EMPTY_WORD",
    "MAX_NEURONS",
    "NeuralCode",
    "SimplicialComplex",
    "closure",
    "facet_intersections",
    "is_max_intersection_complete",
    "is_subword",
    "link",
    "maximal_codewords",
    "nerve",
    "parse_code",
    "parse_word",
    "word_ids",
    "word_key",
    "word_str",
    "CONVEX",
    "NOT_CONVEX",
    "UNSUPPORTED",
    "DIM_EXACTLY_1",
    "DIM_EXACTLY_2",
    "DIM_AT_MOST_2",
    "PATH_CASE",
    "MAX_INTERSECTION_CASE",
    "ORACLE_MAX_NEURONS",
    "RealizationPlan",
    "Verdict",
    "brute_force_1d_realizable",
    "choose_parents",
    "decide",
    "ConvexaError",
    "ParseError",
    "NotAFace",
    "NotAnIntersection",
    "WrongFacetCount",
    "TooManyFacets",
    "InvalidWitness",
    "NoParent",
    "RefineExhausted",
    "NoDedicatedVertex",
    "AlreadyRealized",
    "NotMaxIntersectionComplete",
    "ConvexPolygon",
    "HalfPlane",
    "RationalPoint",
    "pt",
    "RationalInterval",
    "Realization1D",
    "construct_base_1d",
    "construct_min_code_1d",
    "realized_code_1d",
    "region_sequence",
    "witnesses_1d",
    "Cut",
    "Realization2D",
    "fatten",
    "refine_budget",
    "slice_extras",
    "triangle_construction",
    "ObstructionReport",
    "PathOfFacetsWitness",
    "link_contractible_3max",
    "local_obstructions",
    "minimal_code",
    "path_of_facets",
    "WitnessedCode",
    "grid_sample_code",
    "realized_code_2d",
]
