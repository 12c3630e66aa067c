"""Two-colorings of the complete l-uniform hypergraph on an ordered ground set.

Ground sets are 0-based: the N elements are 0 .. N-1, and an l-subset is a
strictly increasing tuple of indices.  A coloring is *transitive* when, for
every (l+1)-tuple whose two consecutive l-windows share a color, all
l-subsets of the tuple carry that color.  Sign colorings of point sequences
in general position have this property, which is what makes the monotone
path search in :mod:`kmonotone.search` return genuinely homogeneous sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import DegeneracyError, DimensionError
from .geometry import PointSequence, SignEvaluator

POSITIVE = 1
NEGATIVE = 2


@dataclass(frozen=True)
class TransitivityWitness:
    """An (l+1)-tuple whose consecutive windows agree but one subset differs."""

    indices: tuple[int, ...]
    offending: tuple[int, ...]


class Coloring:
    """Base interface: a total color map on l-subsets of {0..N-1}."""

    ground_size: int
    arity: int

    def color_of(self, subset: tuple[int, ...]) -> int:
        """Color in {1, 2} of a strictly increasing index tuple (unvalidated)."""
        raise NotImplementedError


class ExplicitColoring(Coloring):
    """Coloring backed by a complete table."""

    def __init__(self, ground_size: int, arity: int, table: Mapping[tuple[int, ...], int]):
        if arity < 1 or arity > ground_size:
            raise DimensionError(f"arity {arity} invalid for ground size {ground_size}")
        expected = comb(ground_size, arity)
        if len(table) != expected:
            raise ValueError(
                f"table has {len(table)} entries, need {expected} for complete coverage"
            )
        for key, value in table.items():
            if len(key) != arity or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"bad subset key {key}")
            if key[0] < 0 or key[-1] >= ground_size:
                raise IndexError(f"subset {key} out of range")
            if value not in (1, 2):
                raise ValueError(f"color {value} not in {{1, 2}}")
        self.ground_size = ground_size
        self.arity = arity
        self._table = dict(table)

    def color_of(self, subset: tuple[int, ...]) -> int:
        return self._table[subset]


class GeometricColoring(Coloring):
    """Sign coloring of (k+1)-tuples of a point sequence, lazily memoized.

    Color 1 is a positive tuple, color 2 a negative one.  A zero sign means
    the sequence is not in k-general position; queries touching such a tuple
    raise DegeneracyError carrying the tuple.
    """

    def __init__(self, seq: PointSequence, k: int, memoize: bool = True):
        self.sequence = seq
        self.k = k
        self.ground_size = len(seq)
        self.arity = k + 1
        self.evaluator = SignEvaluator(seq, k, memoize=memoize)

    def color_of(self, subset: tuple[int, ...]) -> int:
        s = self.evaluator.sign(subset)
        if s == 0:
            raise DegeneracyError(
                f"sequence is not in {self.k}-general position at tuple {subset}",
                witness=subset,
            )
        return POSITIVE if s > 0 else NEGATIVE


def geometric_coloring(seq: PointSequence, k: int) -> GeometricColoring:
    return GeometricColoring(seq, k)


def color(c: Coloring, subset: Sequence[int]) -> int:
    """Validated color lookup."""
    key = tuple(subset)
    if len(key) != c.arity:
        raise DimensionError(f"subset size {len(key)} does not match arity {c.arity}")
    if any(a >= b for a, b in zip(key, key[1:])):
        raise ValueError(f"indices must be strictly increasing, got {key}")
    if key and (key[0] < 0 or key[-1] >= c.ground_size):
        raise IndexError(f"subset {key} out of range for ground size {c.ground_size}")
    return c.color_of(key)


def is_transitive(c: Coloring, weak: bool = False) -> bool | TransitivityWitness:
    """Exhaustive transitivity check over all (l+1)-tuples.

    Returns True, or the first witness in lexicographic order.  With
    ``weak=True`` only the subsets omitting the 2nd or 3rd smallest element
    are required to agree (a relaxation sufficient for the extraction
    recursion), instead of all l-subsets.
    """
    l = c.arity
    check_positions = [p for p in ((1, 2) if weak else range(1, l)) if p < l]
    for t in combinations(range(c.ground_size), l + 1):
        first = c.color_of(t[:l])
        if c.color_of(t[1:]) != first:
            continue
        for pos in check_positions:
            sub = t[:pos] + t[pos + 1 :]
            if c.color_of(sub) != first:
                return TransitivityWitness(indices=t, offending=sub)
    return True


def restrict_coloring(c: Coloring, indices: Sequence[int]) -> ExplicitColoring:
    """Induced coloring on an ordered subset, relabeled to 0..len-1."""
    idx = tuple(indices)
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("restriction indices must be strictly increasing")
    table = {}
    for pos in combinations(range(len(idx)), c.arity):
        table[pos] = c.color_of(tuple(idx[p] for p in pos))
    return ExplicitColoring(len(idx), c.arity, table)


def derived_coloring(c: Coloring, ground: Sequence[int], extra: int) -> ExplicitColoring:
    """Arity-(l-1) coloring on ``ground`` given by adjoining a fixed last element.

    The color of a subset K (positions into ``ground``) is the color of
    K union {extra} under ``c``; every ground element must precede ``extra``.
    Transitivity of ``c`` carries over to the derived coloring.
    """
    idx = tuple(ground)
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("ground indices must be strictly increasing")
    if idx and idx[-1] >= extra:
        raise ValueError("every ground element must precede the adjoined element")
    if c.arity < 2:
        raise DimensionError("cannot derive below arity 1")
    table = {}
    for pos in combinations(range(len(idx)), c.arity - 1):
        key = tuple(idx[p] for p in pos) + (extra,)
        table[pos] = c.color_of(key)
    return ExplicitColoring(len(idx), c.arity - 1, table)


def coloring_to_json_dict(c: Coloring) -> dict:
    """Serialize any coloring as an explicit table."""
    colors = {}
    for subset in combinations(range(c.ground_size), c.arity):
        colors[",".join(map(str, subset))] = c.color_of(subset)
    return {"n": c.ground_size, "arity": c.arity, "colors": colors}


def coloring_from_json_dict(data: dict) -> ExplicitColoring:
    n = data["n"]
    arity = data["arity"]
    table = {}
    for key, value in data["colors"].items():
        subset = tuple(int(part) for part in key.split(","))
        table[subset] = value
    return ExplicitColoring(n, arity, table)
