"""Exact rational toolkit for higher-order monotone subsets of planar point
sequences, transitive-coloring search, extremal constructions, and dimension
lifts."""

from .colorings import (
    ExplicitColoring,
    GeometricColoring,
    TransitivityWitness,
    color,
    derived_coloring,
    geometric_coloring,
    is_transitive,
    restrict_coloring,
)
from .construction import (
    ClusteredSet,
    ConstructionParams,
    VerificationReport,
    block_sequence,
    expected_sign_by_type,
    generate_extremal,
    tuple_type,
    verify_construction,
)
from .geometry import (
    PlanarPoint,
    PointSequence,
    SignEvaluator,
    divided_difference,
    is_k_general_position,
    newton_interpolate,
    point,
    sequence,
    side_of_interpolant,
    tuple_sign,
)
from .lifts import (
    Hyperplane,
    HyperplaneFamily,
    family_from_sequence,
    hyperplane_from_point,
    lift_point,
    max_one_sided_bruteforce,
    max_one_sided_subset,
    one_sided_sign,
    order_type_sign,
    verify_lift_identity,
    vertex_of_hyperplanes,
)
from .numerics import determinant, eval_poly, format_rational, parse_rational, rat, solve_linear
from .search import (
    BoundsReport,
    ExtractionOutcome,
    SearchResult,
    erdos_rado_extract,
    known_bounds,
    largest_homogeneous_bruteforce,
    longest_kth_order_monotone,
    longest_monochromatic_path,
    tower,
)

__all__ = [name for name in dir() if not name.startswith("_")]
