"""Seeded random instance generators for tests, acceptance runs and scripts.

All randomness flows through an explicit ``random.Random`` so every caller
is reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .colorings import ExplicitColoring
from .geometry import PlanarPoint, PointSequence, is_k_general_position
from itertools import combinations


def random_rational(
    rng: random.Random, bound: int = 10**6, max_denominator: int = 60
) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))


def random_point_sequence(
    rng: random.Random,
    size: int,
    y_bound: int = 10**6,
    max_denominator: int = 60,
) -> PointSequence:
    """Points with x = index plus a small rational jitter and random rational y."""
    pts = []
    for i in range(size):
        jitter = Fraction(rng.randint(-100, 100), 301)
        y = random_rational(rng, y_bound, max_denominator)
        pts.append(PlanarPoint(Fraction(i) + jitter, y))
    return PointSequence(tuple(pts))


def random_k_general_sequence(
    rng: random.Random,
    size: int,
    k: int,
    max_tries: int = 64,
    y_bound: int = 10**6,
    max_denominator: int = 60,
) -> PointSequence:
    """Rejection-sample a sequence in k-general position (checked exactly)."""
    for _ in range(max_tries):
        seq = random_point_sequence(rng, size, y_bound, max_denominator)
        ok, _ = is_k_general_position(seq, k)
        if ok:
            return seq
    raise RuntimeError(f"no {k}-general sequence of size {size} after {max_tries} tries")


def random_transitive_coloring(rng: random.Random, n: int, arity: int) -> ExplicitColoring:
    """A random transitive explicit coloring (not sign-induced).

    The color of each subset depends only on its minimum (or, by coin flip,
    its maximum) element: if the two consecutive windows of an (l+1)-tuple
    agree, every l-subset shares its min (resp. max) with one of them, so
    the coloring is transitive by construction.
    """
    anchor = rng.choice((min, max))
    labels = [rng.randint(1, 2) for _ in range(n)]
    table = {
        subset: labels[anchor(subset)]
        for subset in combinations(range(n), arity)
    }
    return ExplicitColoring(n, arity, table)
