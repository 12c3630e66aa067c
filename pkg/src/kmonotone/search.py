"""Largest homogeneous / monotone subset search over ordered colorings.

The workhorse is a dynamic program over monochromatic monotone paths:
increasing index sequences whose consecutive arity-l windows all share one
color.  For transitive colorings (every geometric sign coloring is one) the
support of a longest such path is a genuinely homogeneous set, so the DP
computes the largest k-th-order monotone subset of a point sequence.  A
subset-enumeration brute force serves as the independent oracle, and the
classical equivalence-class extraction gives a second, proof-shaped route
to homogeneous sets for arity >= 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .colorings import (
    Coloring,
    GeometricColoring,
    derived_coloring,
    geometric_coloring,
)
from .errors import DegeneracyError, DimensionError, SizeCapError, TowerOverflowError
from .geometry import PointSequence


@dataclass(frozen=True)
class SearchResult:
    """A monochromatic monotone path: every consecutive arity-window of
    ``indices`` carries ``color``.  For results produced under a transitive
    coloring the whole index set is homogeneous."""

    length: int
    indices: tuple[int, ...]
    color: int

    def to_json_dict(self) -> dict:
        return {"length": self.length, "indices": list(self.indices), "color": self.color}


POSITIVE_DEFAULT = 1


def _trivial_result(n: int) -> SearchResult:
    # Fewer elements than one window: vacuously monochromatic; color 1 by
    # convention since no window pins a color.
    return SearchResult(n, tuple(range(n)), POSITIVE_DEFAULT)


def _longest_path_pairs(coloring: Coloring) -> SearchResult:
    """Arity-2 specialization of the path DP with integer state keys.

    Geometric order-1 colorings compare scaled integer y-values inline,
    which is what makes quadratic-size instances (several hundred points)
    affordable.  Semantics are identical to the generic DP.
    """
    n = coloring.ground_size
    ys: list[int] | None = None
    if isinstance(coloring, GeometricColoring) and coloring.k == 1:
        ys = coloring.evaluator.scaled_ys()
    color_of = coloring.color_of
    h1 = [1] * n
    h2 = [1] * n
    for i in range(n - 2, -1, -1):
        best1 = 1
        best2 = 1
        if ys is not None:
            yi = ys[i]
            for j in range(i + 1, n):
                yj = ys[j]
                if yj > yi:
                    v = h1[j] + 1
                    if v > best1:
                        best1 = v
                elif yj < yi:
                    v = h2[j] + 1
                    if v > best2:
                        best2 = v
                else:
                    raise DegeneracyError(
                        f"sequence is not in 1-general position at tuple {(i, j)}",
                        witness=(i, j),
                    )
        else:
            for j in range(i + 1, n):
                if color_of((i, j)) == 1:
                    v = h1[j] + 1
                    if v > best1:
                        best1 = v
                else:
                    v = h2[j] + 1
                    if v > best2:
                        best2 = v
        h1[i] = best1
        h2[i] = best2
    best = max(max(h1), max(h2))
    start = min(i for i in range(n) if h1[i] == best or h2[i] == best)

    def window_color(i: int, j: int) -> int:
        if ys is not None:
            return 1 if ys[j] > ys[i] else 2
        return color_of((i, j))

    candidates = []
    for col, h in ((1, h1), (2, h2)):
        if h[start] != best:
            continue
        path = [start]
        cur = start
        remaining = best - 1
        while remaining > 0:
            for j in range(cur + 1, n):
                if window_color(cur, j) == col and h[j] >= remaining:
                    path.append(j)
                    cur = j
                    remaining -= 1
                    break
            else:  # pragma: no cover - table consistency guards
                raise AssertionError("inconsistent path table")
        candidates.append((tuple(path), col))
    path, col = min(candidates)
    return SearchResult(best, path, col)


def longest_monochromatic_path(coloring: Coloring) -> SearchResult:
    """Exact longest monochromatic monotone path, lexicographically smallest.

    State: the last (l-1) indices of a path plus its color; value: the
    maximum number of elements of a path beginning with that suffix.  States
    are processed in reverse lexicographic order so every extension is
    already solved.  Ties in length are broken toward the lexicographically
    smallest index sequence (then toward color 1).
    """
    n = coloring.ground_size
    l = coloring.arity
    if n < l:
        return _trivial_result(n)
    if l == 2:
        return _longest_path_pairs(coloring)
    color_of = coloring.color_of
    base = l - 1
    states = list(combinations(range(n), base))
    h1: dict[tuple[int, ...], int] = {}
    h2: dict[tuple[int, ...], int] = {}
    for sigma in reversed(states):
        tail = sigma[1:]
        best1 = base
        best2 = base
        for j in range(sigma[-1] + 1, n):
            nxt = tail + (j,)
            if color_of(sigma + (j,)) == 1:
                v = h1[nxt] + 1
                if v > best1:
                    best1 = v
            else:
                v = h2[nxt] + 1
                if v > best2:
                    best2 = v
        h1[sigma] = best1
        h2[sigma] = best2
    best = max(max(h1.values()), max(h2.values()))
    start = min(s for s in states if h1[s] == best or h2[s] == best)
    candidates = []
    for col, h in ((1, h1), (2, h2)):
        if h[start] != best:
            continue
        path = list(start)
        cur = start
        remaining = best - base
        while remaining > 0:
            for j in range(cur[-1] + 1, n):
                nxt = cur[1:] + (j,)
                if color_of(cur + (j,)) == col and h[nxt] >= base + remaining - 1:
                    path.append(j)
                    cur = nxt
                    remaining -= 1
                    break
            else:  # pragma: no cover - table consistency guards
                raise AssertionError("inconsistent path table")
        candidates.append((tuple(path), col))
    path, col = min(candidates)
    return SearchResult(best, path, col)


def largest_homogeneous_bruteforce(coloring: Coloring, cap: int = 16) -> SearchResult:
    """Maximum subset all of whose arity-subsets share one color.

    Subset enumeration in descending size with early exit; the independent
    oracle for the path DP on transitive colorings.  Lexicographically
    smallest witness of the maximum size.
    """
    n = coloring.ground_size
    if n > cap:
        raise SizeCapError(f"ground size {n} exceeds brute-force cap {cap}")
    l = coloring.arity
    if n < l:
        return _trivial_result(n)
    color_of = coloring.color_of
    for size in range(n, l - 1, -1):
        for subset in combinations(range(n), size):
            col = color_of(subset[:l])
            if all(color_of(t) == col for t in combinations(subset, l)):
                return SearchResult(size, subset, col)
    raise AssertionError("unreachable: a single window is always homogeneous")


def longest_kth_order_monotone(seq: PointSequence, k: int) -> SearchResult:
    """Largest k-th-order monotone subset of a k-general-position sequence.

    Builds the sign coloring and runs the path DP; transitivity of sign
    colorings makes the result fully homogeneous (color 1: all tuples
    positive; color 2: all negative).
    """
    return longest_monochromatic_path(geometric_coloring(seq, k))


@dataclass(frozen=True)
class ExtractionOutcome:
    """Result of the equivalence-class extraction; ``reached`` is False when
    the ground set ran out before the requested size (the returned set is
    still homogeneous)."""

    result: SearchResult
    target: int
    reached: bool

    def to_json_dict(self) -> dict:
        return {
            "result": self.result.to_json_dict(),
            "target": self.target,
            "reached": self.reached,
        }


def erdos_rado_extract(coloring: Coloring, n: int) -> ExtractionOutcome:
    """Homogeneous-set extraction by iterated equivalence-class refinement.

    For arity l = k+1 >= 4: seed the accumulator with the first k-1
    elements, then repeatedly move the least remaining element x_i into the
    accumulator A and keep the largest class of the remainder under the
    equivalence "same color on K + {x_i, y} for every (k-1)-subset K of the
    previous accumulator" (ties: class with the smallest minimum).  Once the
    pool is down to one element x, the arity-k coloring K -> color(K + {x})
    on A inherits transitivity, and the procedure recurses, bottoming out in
    the path DP at arity 3.

    The caller is responsible for ``coloring`` being transitive; that is
    what makes the output homogeneous.  When the ground set is smaller than
    the guaranteed regime the best-effort result is returned with
    ``reached`` reflecting whether the target size was met.
    """
    l = coloring.arity
    if l < 3:
        raise DimensionError("extraction needs arity at least 3")
    ground_size = coloring.ground_size
    if ground_size <= l:
        # At most one colored tuple exists: the whole ground set is homogeneous.
        col = coloring.color_of(tuple(range(l))) if ground_size == l else POSITIVE_DEFAULT
        res = SearchResult(ground_size, tuple(range(ground_size)), col)
        return ExtractionOutcome(res, n, res.length >= n)
    if l == 3:
        res = longest_monochromatic_path(coloring)
        return ExtractionOutcome(res, n, res.length >= n)

    k = l - 1
    acc = list(range(k - 1))
    pool = list(range(k - 1, ground_size))
    while len(pool) >= 2:
        pivot = pool[0]
        prev_acc = tuple(acc)
        rest = pool[1:]
        classes: dict[tuple[int, ...], list[int]] = {}
        keys = list(combinations(prev_acc, k - 1))
        for y in rest:
            signature = tuple(coloring.color_of(key + (pivot, y)) for key in keys)
            classes.setdefault(signature, []).append(y)
        acc.append(pivot)
        pool = min(classes.values(), key=lambda cls: (-len(cls), cls[0]))
    adjoined = pool[0]
    derived = derived_coloring(coloring, acc, adjoined)
    inner = erdos_rado_extract(derived, n)
    indices = tuple(acc[p] for p in inner.result.indices)
    res = SearchResult(inner.result.length, indices, inner.result.color)
    return ExtractionOutcome(res, n, res.length >= n)


def tower(k: int, x: int, max_bits: int = 1_000_000) -> int:
    """Iterated exponential: height 1 is x, each further level is 2**previous.

    Raises TowerOverflowError once the next level would exceed ``max_bits``
    bits.
    """
    if k < 1:
        raise ValueError(f"height must be at least 1, got {k}")
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    value = x
    for _ in range(k - 1):
        if value > max_bits:
            raise TowerOverflowError(
                f"tower value would need {value} bits, budget is {max_bits}"
            )
        value = 1 << value
    return value


@dataclass(frozen=True)
class BoundsReport:
    """Known extremal sizes for guaranteed k-th-order monotone subsets of n
    points: smallest N forcing one.  Exact for k = 1, 2; doubly exponential
    lower bound for k = 3 at odd targets; unknown otherwise."""

    k: int
    n: int
    known_lower: int | None
    known_upper: int | None
    formula_tags: tuple[str, ...]

    def __post_init__(self):
        if self.known_lower is not None and self.known_upper is not None:
            if self.known_lower > self.known_upper:
                raise ValueError("lower bound exceeds upper bound")

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "known_lower": "unknown" if self.known_lower is None else str(self.known_lower),
            "known_upper": "unknown" if self.known_upper is None else str(self.known_upper),
            "formula_tags": list(self.formula_tags),
        }


def known_bounds(k: int, n: int) -> BoundsReport:
    """Known values of the extremal function for k-th-order monotone subsets."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if k == 1:
        value = (n - 1) ** 2 + 1
        return BoundsReport(k, n, value, value, ("exact:(n-1)^2+1",))
    if k == 2:
        value = comb(2 * n - 4, n - 2) + 1
        return BoundsReport(k, n, value, value, ("exact:C(2n-4,n-2)+1",))
    if k == 3 and n % 2 == 1 and n >= 5:
        half = (n - 1) // 2
        lower = 2 ** (2 ** (half - 1)) + 1
        return BoundsReport(
            k,
            n,
            lower,
            None,
            (
                "lower:2^(2^((n-3)/2))+1",
                "upper:tower(3,O(n)) asymptotic only (constant unspecified)",
            ),
        )
    return BoundsReport(
        k,
        n,
        None,
        None,
        (f"upper:tower({k},O(n)) asymptotic only (constant unspecified)",),
    )
