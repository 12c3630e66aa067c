"""Planar point sequences and exact order-k sign predicates.

The central quantity is the order-k divided difference of k+1 points with
distinct x-coordinates.  Its sign classifies the tuple: positive tuples lie
on the graph of a function whose k-th derivative is everywhere nonnegative,
negative tuples on one whose k-th derivative is everywhere nonpositive, and
a zero value means the points sit on a polynomial of degree at most k-1.
All arithmetic is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterator, Sequence

from .errors import DegeneracyError, DimensionError
from .numerics import (
    Polynomial,
    eval_poly,
    format_rational,
    parse_rational,
    poly_add,
    poly_mul_linear,
    poly_trim,
    rat,
)


@dataclass(frozen=True)
class PlanarPoint:
    x: Fraction
    y: Fraction


def point(x, y) -> PlanarPoint:
    """Build a PlanarPoint from int/str/Fraction coordinates."""
    return PlanarPoint(rat(x), rat(y))


@dataclass(frozen=True)
class PointSequence:
    """Planar points with strictly increasing x-coordinates."""

    points: tuple[PlanarPoint, ...]

    def __post_init__(self):
        for a, b in zip(self.points, self.points[1:]):
            if a.x >= b.x:
                raise ValueError(
                    f"x-coordinates must be strictly increasing, got {a.x} before {b.x}"
                )

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> PlanarPoint:
        return self.points[i]

    def __iter__(self) -> Iterator[PlanarPoint]:
        return iter(self.points)

    def xs(self) -> list[Fraction]:
        return [p.x for p in self.points]

    def ys(self) -> list[Fraction]:
        return [p.y for p in self.points]

    def subsequence(self, indices: Sequence[int]) -> "PointSequence":
        return PointSequence(tuple(self.points[i] for i in indices))


def sequence(pairs) -> PointSequence:
    """Build a PointSequence from (x, y) pairs of int/str/Fraction."""
    return PointSequence(tuple(point(x, y) for x, y in pairs))


def sequence_to_json_dict(seq: PointSequence) -> dict:
    return {
        "points": [
            {"x": format_rational(p.x), "y": format_rational(p.y)} for p in seq
        ]
    }


def sequence_from_json_dict(data: dict) -> PointSequence:
    pts = tuple(
        PlanarPoint(parse_rational(entry["x"]), parse_rational(entry["y"]))
        for entry in data["points"]
    )
    return PointSequence(pts)


def _require_distinct_x(points: Sequence[PlanarPoint]) -> None:
    seen: set[Fraction] = set()
    for p in points:
        if p.x in seen:
            raise DegeneracyError(f"duplicate x-coordinate {p.x}")
        seen.add(p.x)


def divided_difference(points: Sequence[PlanarPoint], k: int) -> Fraction:
    """Exact order-k divided difference of k+1 points.

    The x-coordinates must be distinct but may come in any order; the value
    is invariant under permutations of the points.
    """
    if len(points) != k + 1:
        raise DimensionError(f"order {k} needs {k + 1} points, got {len(points)}")
    _require_distinct_x(points)
    xs = [p.x for p in points]
    table = [p.y for p in points]
    for level in range(1, k + 1):
        for j in range(k + 1 - level):
            table[j] = (table[j + 1] - table[j]) / (xs[j + level] - xs[j])
    return table[0]


def newton_interpolate(points: Sequence[PlanarPoint]) -> Polynomial:
    """Unique polynomial of degree <= k through k+1 points with distinct x.

    Computed in Newton form from the divided-difference table, then expanded
    into ascending monomial coefficients.  The degree-k coefficient equals
    the order-k divided difference of the points.
    """
    _require_distinct_x(points)
    n = len(points)
    xs = [p.x for p in points]
    coef = [p.y for p in points]
    for level in range(1, n):
        for j in range(n - 1, level - 1, -1):
            coef[j] = (coef[j] - coef[j - 1]) / (xs[j] - xs[j - level])
    poly: Polynomial = []
    basis: Polynomial = [Fraction(1)]
    for i, c in enumerate(coef):
        poly = poly_add(poly, [c * b for b in basis])
        basis = poly_mul_linear(basis, xs[i])
    return poly_trim(poly)


def _require_increasing_x(points: Sequence[PlanarPoint]) -> None:
    for a, b in zip(points, points[1:]):
        if a.x >= b.x:
            raise ValueError("tuple must be ordered by strictly increasing x")


def tuple_sign(points: Sequence[PlanarPoint], k: int) -> int:
    """Sign (-1, 0, +1) of the order-k divided difference.

    Requires the points in strictly increasing x order.  Zero means the
    tuple lies on a polynomial of degree at most k-1.
    """
    if len(points) != k + 1:
        raise DimensionError(f"order {k} needs {k + 1} points, got {len(points)}")
    _require_increasing_x(points)
    value = divided_difference(points, k)
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


class SignEvaluator:
    """Memoized exact tuple-sign oracle over a fixed point sequence.

    Coordinates are rescaled once by positive integers (the lcm of the x
    denominators and of the y denominators).  Positive axis scalings never
    change a divided-difference sign, and pure integer arithmetic keeps the
    per-tuple cost low enough for millions of evaluations.  Intermediate
    fractions are carried as unreduced (numerator, denominator) pairs with
    positive denominators, so the final sign is the sign of a numerator.
    """

    def __init__(self, seq: PointSequence, k: int, memoize: bool = True):
        self.sequence = seq
        self.k = k
        mult_x = lcm(*(p.x.denominator for p in seq)) if len(seq) else 1
        mult_y = lcm(*(p.y.denominator for p in seq)) if len(seq) else 1
        self._xs = [p.x.numerator * (mult_x // p.x.denominator) for p in seq]
        self._ys = [p.y.numerator * (mult_y // p.y.denominator) for p in seq]
        self._memo: dict[tuple[int, ...], int] | None = {} if memoize else None

    def scaled_ys(self) -> list[int]:
        """Integer y-coordinates, an order-isomorphic copy of the exact ys."""
        return list(self._ys)

    def sign(self, indices: tuple[int, ...]) -> int:
        """Sign of the order-k divided difference over the indexed tuple.

        ``indices`` must be strictly increasing positions into the sequence.
        """
        if self._memo is not None:
            cached = self._memo.get(indices)
            if cached is not None:
                return cached
        m = self.k + 1
        if len(indices) != m:
            raise DimensionError(f"order {self.k} needs {m} indices, got {len(indices)}")
        last = -1
        for i in indices:
            if i <= last:
                raise ValueError("indices must be strictly increasing")
            last = i
        if last >= len(self.sequence):
            raise IndexError(f"index {last} out of range for {len(self.sequence)} points")
        xs = self._xs
        ys = self._ys
        num = [ys[i] for i in indices]
        den = [1] * m
        for level in range(1, m):
            for j in range(m - level):
                dx = xs[indices[j + level]] - xs[indices[j]]
                num[j], den[j] = (
                    num[j + 1] * den[j] - num[j] * den[j + 1],
                    den[j] * den[j + 1] * dx,
                )
        top = num[0]
        result = 1 if top > 0 else (-1 if top < 0 else 0)
        if self._memo is not None:
            self._memo[indices] = result
        return result


def is_k_general_position(
    seq: PointSequence, k: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Whether every (k+1)-subset has a nonzero order-k divided difference.

    Returns (True, None) or (False, first violating index tuple in
    lexicographic order).
    """
    n = len(seq)
    if k == 1:
        # 1-general position is exactly "all y distinct"; scan pairs only
        # when a duplicate exists, to recover the lexicographically first one.
        if len({p.y for p in seq}) == n:
            return True, None
    evaluator = SignEvaluator(seq, k, memoize=False)
    for idx in combinations(range(n), k + 1):
        if evaluator.sign(idx) == 0:
            return False, idx
    return True, None


def side_of_interpolant(points: Sequence[PlanarPoint], i: int) -> int:
    """Tuple sign recovered from which side of an interpolant one point is on.

    For a (k+1)-tuple in k-general position and a 0-based position ``i``,
    interpolate the other k points by a polynomial of degree at most k-1 and
    compare the held-out point against it: the tuple sign is (-1)^(k-i-1)
    when the point is below the graph and (-1)^(k-i) when above.  Must agree
    with :func:`tuple_sign` on every input.
    """
    k = len(points) - 1
    if not 0 <= i <= k:
        raise DimensionError(f"position {i} out of range for a {k + 1}-tuple")
    _require_increasing_x(points)
    others = [p for j, p in enumerate(points) if j != i]
    interp = newton_interpolate(others)
    on_curve = eval_poly(interp, points[i].x)
    if points[i].y == on_curve:
        raise DegeneracyError(
            "tuple is not in k-general position: held-out point lies on the interpolant"
        )
    parity = (k - i - 1) if points[i].y < on_curve else (k - i)
    return 1 if parity % 2 == 0 else -1
