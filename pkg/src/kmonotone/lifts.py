"""Dimension lifts: moment curves, orientation signs, one-sided hyperplanes.

A planar point (x, y) lifts to (x, x^2, ..., x^(d-1), y) in R^d.  The
orientation of d+1 lifted points equals the order-(d) divided-difference
sign of the planar tuple, which translates planar higher-order monotonicity
into order-type and hyperplane statements: the hyperplane with coefficients
(1, x, ..., x^(d-1)) and right-hand side y meets d-1 siblings in a vertex
whose last coordinate is the leading coefficient of the interpolant through
the d source points, so one-sided subfamilies correspond exactly to
(d-1)-th-order monotone subsets of the source sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .colorings import NEGATIVE, POSITIVE
from .errors import DegeneracyError, DimensionError, SizeCapError
from .geometry import PlanarPoint, PointSequence, sequence_from_json_dict, sequence_to_json_dict
from .numerics import determinant, format_rational, parse_rational, solve_linear
from .search import SearchResult, longest_kth_order_monotone

LiftedPoint = tuple[Fraction, ...]


def lift_point(p: PlanarPoint, d: int) -> LiftedPoint:
    """Moment-style lift (x, x^2, ..., x^(d-1), y) into R^d."""
    if d < 1:
        raise DimensionError(f"dimension must be at least 1, got {d}")
    coords = []
    power = Fraction(1)
    for _ in range(d - 1):
        power *= p.x
        coords.append(power)
    coords.append(p.y)
    return tuple(coords)


def order_type_sign(pts: list[LiftedPoint]) -> int:
    """Orientation of d+1 points in R^d: sign of det of the matrix whose
    j-th column is 1 followed by the j-th point; 0 iff affinely degenerate."""
    if not pts:
        raise DimensionError("need at least one point")
    d = len(pts[0])
    if len(pts) != d + 1:
        raise DimensionError(f"need {d + 1} points in dimension {d}, got {len(pts)}")
    if any(len(q) != d for q in pts):
        raise DimensionError("points have mixed dimensions")
    matrix = [[Fraction(1)] * (d + 1)]
    for row in range(d):
        matrix.append([q[row] for q in pts])
    det = determinant(matrix)
    return 1 if det > 0 else (-1 if det < 0 else 0)


def verify_lift_identity(seq: PointSequence, d: int, indices: tuple[int, ...]) -> bool:
    """Cross-check: planar tuple sign equals the lifted orientation sign.

    Both sides are computed independently (divided-difference recursion vs.
    determinant), so this is a genuine two-route consistency predicate.
    """
    from .geometry import tuple_sign

    pts = [seq[i] for i in indices]
    planar = tuple_sign(pts, d)
    lifted = order_type_sign([lift_point(p, d) for p in pts])
    return planar == lifted


@dataclass(frozen=True)
class Hyperplane:
    coefficients: tuple[Fraction, ...]
    rhs: Fraction


def hyperplane_from_point(p: PlanarPoint, d: int) -> Hyperplane:
    """Hyperplane in R^d with coefficients (1, x, x^2, ..., x^(d-1)) and
    right-hand side y."""
    if d < 2:
        raise DimensionError(f"dimension must be at least 2, got {d}")
    coeffs = []
    power = Fraction(1)
    for _ in range(d):
        coeffs.append(power)
        power *= p.x
    return Hyperplane(tuple(coeffs), p.y)


@dataclass(frozen=True)
class HyperplaneFamily:
    hyperplanes: tuple[Hyperplane, ...]
    source: PointSequence | None = None

    def __post_init__(self):
        if not self.hyperplanes:
            raise ValueError("family must be nonempty")
        d = len(self.hyperplanes[0].coefficients)
        if any(len(h.coefficients) != d for h in self.hyperplanes):
            raise DimensionError("hyperplanes have mixed dimensions")
        if self.source is not None and len(self.source) != len(self.hyperplanes):
            raise ValueError("source sequence length must match family size")

    @property
    def dimension(self) -> int:
        return len(self.hyperplanes[0].coefficients)

    def __len__(self) -> int:
        return len(self.hyperplanes)


def family_from_sequence(seq: PointSequence, d: int) -> HyperplaneFamily:
    return HyperplaneFamily(
        tuple(hyperplane_from_point(p, d) for p in seq), source=seq
    )


def vertex_of_hyperplanes(hs: list[Hyperplane]) -> tuple[Fraction, ...]:
    """Exact common point of d hyperplanes in R^d (raises on singular systems,
    which signal a general-position failure)."""
    if not hs:
        raise DimensionError("need at least one hyperplane")
    d = len(hs[0].coefficients)
    if len(hs) != d:
        raise DimensionError(f"need {d} hyperplanes in dimension {d}, got {len(hs)}")
    matrix = [list(h.coefficients) for h in hs]
    rhs = [h.rhs for h in hs]
    return tuple(solve_linear(matrix, rhs))


def one_sided_sign(family: HyperplaneFamily, indices: tuple[int, ...]) -> int:
    """+1/-1 when every arrangement vertex of the subfamily has strictly
    positive/negative last coordinate, 0 when sides are mixed.

    A vertex exactly on the last-coordinate hyperplane is degenerate and
    raises rather than counting for either side.
    """
    d = family.dimension
    side = 0
    for combo in combinations(indices, d):
        vertex = vertex_of_hyperplanes([family.hyperplanes[i] for i in combo])
        last = vertex[-1]
        if last == 0:
            raise DegeneracyError(
                f"vertex of {combo} lies on the boundary hyperplane", witness=combo
            )
        s = 1 if last > 0 else -1
        if side == 0:
            side = s
        elif side != s:
            return 0
    return side


def max_one_sided_subset(family: HyperplaneFamily) -> SearchResult:
    """Largest one-sided subfamily, via the planar reduction.

    Valid for families built from a source sequence: each subfamily vertex's
    last-coordinate sign equals the order-(d-1) divided-difference sign of
    the corresponding source points, so the answer is the largest
    (d-1)-th-order monotone subset of the source.  Color 1 means all
    vertices above, color 2 all below.
    """
    if family.source is None:
        raise ValueError("reduction requires a family built from a point sequence")
    d = family.dimension
    if d < 2:
        raise DimensionError("need dimension at least 2")
    return longest_kth_order_monotone(family.source, d - 1)


def max_one_sided_bruteforce(family: HyperplaneFamily, cap: int = 12) -> SearchResult:
    """Independent oracle: enumerate subfamilies by descending size and check
    every arrangement vertex directly."""
    n = len(family)
    if n > cap:
        raise SizeCapError(f"family size {n} exceeds brute-force cap {cap}")
    d = family.dimension
    if n < d:
        return SearchResult(n, tuple(range(n)), POSITIVE)
    side_of: dict[tuple[int, ...], int] = {}
    for combo in combinations(range(n), d):
        vertex = vertex_of_hyperplanes([family.hyperplanes[i] for i in combo])
        last = vertex[-1]
        if last == 0:
            raise DegeneracyError(
                f"vertex of {combo} lies on the boundary hyperplane", witness=combo
            )
        side_of[combo] = 1 if last > 0 else -1
    for size in range(n, d - 1, -1):
        for subset in combinations(range(n), size):
            first = side_of[subset[:d]]
            if all(side_of[c] == first for c in combinations(subset, d)):
                return SearchResult(size, subset, POSITIVE if first > 0 else NEGATIVE)
    raise AssertionError("unreachable: a single vertex is always one-sided")


def largest_order_type_homogeneous(pts: list[LiftedPoint], cap: int = 14) -> SearchResult:
    """Largest subsequence of R^d points whose (d+1)-tuples all share one
    orientation; brute force (orientation colorings admit no path DP)."""
    n = len(pts)
    if n > cap:
        raise SizeCapError(f"{n} points exceed the brute-force cap {cap}")
    if not pts:
        raise DimensionError("need at least one point")
    d = len(pts[0])
    if n < d + 1:
        return SearchResult(n, tuple(range(n)), POSITIVE)
    orientation: dict[tuple[int, ...], int] = {}
    for combo in combinations(range(n), d + 1):
        s = order_type_sign([pts[i] for i in combo])
        if s == 0:
            raise DegeneracyError(f"degenerate tuple {combo}", witness=combo)
        orientation[combo] = s
    for size in range(n, d, -1):
        for subset in combinations(range(n), size):
            first = orientation[subset[: d + 1]]
            if all(orientation[c] == first for c in combinations(subset, d + 1)):
                return SearchResult(size, subset, POSITIVE if first > 0 else NEGATIVE)
    raise AssertionError("unreachable: a single tuple is always homogeneous")


def family_to_json_dict(family: HyperplaneFamily) -> dict:
    data: dict = {
        "hyperplanes": [
            {
                "coeffs": [format_rational(c) for c in h.coefficients],
                "rhs": format_rational(h.rhs),
            }
            for h in family.hyperplanes
        ]
    }
    if family.source is not None:
        data["source"] = sequence_to_json_dict(family.source)
    return data


def family_from_json_dict(data: dict) -> HyperplaneFamily:
    planes = tuple(
        Hyperplane(
            tuple(parse_rational(c) for c in entry["coeffs"]),
            parse_rational(entry["rhs"]),
        )
        for entry in data["hyperplanes"]
    )
    source = None
    if "source" in data:
        source = sequence_from_json_dict(data["source"])
    return HyperplaneFamily(planes, source=source)
