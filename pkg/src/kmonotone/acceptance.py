"""Acceptance criteria runners.

Each ``criterion_N`` function performs one acceptance check with pinned
seeds and returns a JSON-serializable report dict whose content is fully
deterministic (no timings, no environment data), so a rerun must reproduce
it byte for byte.  The pytest module ``tests/test_acceptance.py`` asserts
on these reports and enforces the time budgets; ``scripts/`` exposes the
same runners for standalone use.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

from . import construction, lifts, search
from .colorings import derived_coloring, geometric_coloring, is_transitive
from .geometry import SignEvaluator, divided_difference
from .randgen import random_k_general_sequence, random_transitive_coloring

SEED_ORACLE = 1001
SEED_MONOTONE = 1002
SEED_CONVEX = 1003
SEED_SAMPLED_P4 = 1005
SEED_TRANSITIVITY = 1006
SEED_SIDE = 1007
SEED_LIFT = 1008
SEED_ONESIDED = 1009
SEED_EXTRACT = 1010

# x-contiguous restriction of the 256-point set used for the fallback DP:
# four full clusters, central.
P4_RESTRICTION = range(96, 160)


def criterion_1() -> dict:
    """DP length equals brute-force homogeneous length on random instances."""
    rng = random.Random(SEED_ORACLE)
    cases = []
    mismatches = 0
    for k in (1, 2, 3):
        for _ in range(70):
            size = rng.randint(max(k + 2, 5), 11)
            seq = random_k_general_sequence(rng, size, k)
            dp = search.longest_kth_order_monotone(seq, k)
            brute = search.largest_homogeneous_bruteforce(geometric_coloring(seq, k))
            if dp.length != brute.length:
                mismatches += 1
            cases.append({"k": k, "n": size, "dp": dp.length, "bruteforce": brute.length})
    return {
        "criterion": 1,
        "name": "oracle equivalence of path DP and brute force",
        "instances": len(cases),
        "mismatches": mismatches,
        "lengths": [c["dp"] for c in cases],
        "passed": mismatches == 0 and len(cases) >= 200,
    }


def criterion_2() -> dict:
    """Quadratic-size sequences force monotone subsets; block sets are tight."""
    rng = random.Random(SEED_MONOTONE)
    failures = []
    block_results = {}
    for n in range(3, 21):
        size = (n - 1) ** 2 + 1
        for trial in range(100):
            seq = random_k_general_sequence(rng, size, 1)
            got = search.longest_kth_order_monotone(seq, 1).length
            if got < n:
                failures.append({"n": n, "trial": trial, "got": got})
        block = construction.block_sequence(n - 1)
        block_results[str(n)] = search.longest_kth_order_monotone(block, 1).length
    exact = all(block_results[str(n)] == n - 1 for n in range(3, 21))
    return {
        "criterion": 2,
        "name": "guaranteed monotone subsets at quadratic size",
        "failures": failures,
        "block_lengths": block_results,
        "passed": not failures and exact,
    }


def criterion_3() -> dict:
    """Binomial-size sequences force order-2 monotone (convex/concave) subsets."""
    rng = random.Random(SEED_CONVEX)
    failures = []
    for n in (4, 5, 6):
        size = comb(2 * n - 4, n - 2) + 1
        for trial in range(100):
            seq = random_k_general_sequence(rng, size, 2)
            got = search.longest_kth_order_monotone(seq, 2).length
            if got < n:
                failures.append({"n": n, "trial": trial, "got": got})
    return {
        "criterion": 3,
        "name": "guaranteed convex/concave subsets at binomial size",
        "failures": failures,
        "passed": not failures,
    }


def criterion_4() -> dict:
    """16-point generation: exhaustive sign table and DP cap at 6."""
    cs = construction.generate_extremal(3)
    report = construction.verify_construction(cs, mode="exhaustive")
    dp = search.longest_kth_order_monotone(cs.points, 3)
    brute = search.largest_homogeneous_bruteforce(
        geometric_coloring(cs.points, 3), cap=16
    )
    return {
        "criterion": 4,
        "name": "16-point set: exhaustive type table and DP cap 6",
        "points": len(cs.points),
        "tuples_checked": report.tuples_checked,
        "verification_passed": report.passed,
        "dp_length": dp.length,
        "bruteforce_length": brute.length,
        "passed": (
            len(cs.points) == 16
            and report.passed
            and report.tuples_checked == 1820
            and dp.length <= 6
            and dp.length == brute.length
        ),
    }


def criterion_5() -> dict:
    """256-point generation: 10^6 sampled type checks and restricted DP cap 8.

    The full 256-point DP is implemented (scripts/p4_full_search.py) but
    priced beyond a desk run in pure Python, so the certified fallback is
    the x-contiguous 64-point restriction.
    """
    cs = construction.generate_extremal(4)
    report = construction.verify_construction(
        cs, mode="sampled", samples=1_000_000, seed=SEED_SAMPLED_P4
    )
    restriction = cs.points.subsequence(P4_RESTRICTION)
    dp = search.longest_kth_order_monotone(restriction, 3)
    return {
        "criterion": 5,
        "name": "256-point set: sampled type table and restricted DP cap 8",
        "points": len(cs.points),
        "tuples_checked": report.tuples_checked,
        "verification_passed": report.passed,
        "restriction": [P4_RESTRICTION.start, P4_RESTRICTION.stop],
        "restricted_dp_length": dp.length,
        "full_dp_note": "full 256-point DP via scripts/p4_full_search.py",
        "passed": (
            len(cs.points) == 256
            and report.passed
            and report.tuples_checked == 1_000_000
            and dp.length <= 8
        ),
    }


def criterion_6() -> dict:
    """Sign colorings of general-position sequences are transitive."""
    rng = random.Random(SEED_TRANSITIVITY)
    failures = []
    for k in (1, 2, 3, 4):
        for trial in range(50):
            seq = random_k_general_sequence(rng, 12, k)
            verdict = is_transitive(geometric_coloring(seq, k))
            if verdict is not True:
                failures.append({"k": k, "trial": trial, "witness": list(verdict.indices)})
    return {
        "criterion": 6,
        "name": "transitivity of sign colorings (exhaustive, N=12)",
        "instances": 200,
        "failures": failures,
        "passed": not failures,
    }


def criterion_7() -> dict:
    """Side-of-interpolant rule agrees with the divided-difference sign."""
    rng = random.Random(SEED_SIDE)
    checked = 0
    failures = []
    for k in (1, 2, 3, 4, 5):
        for trial in range(2000):
            pts = list(random_k_general_sequence(rng, k + 1, k))
            expected = (
                1 if divided_difference(pts, k) > 0 else -1
            )
            for i in range(k + 1):
                checked += 1
                if lifts_side := None:  # pragma: no cover - placeholder branch
                    pass
                from .geometry import side_of_interpolant

                if side_of_interpolant(pts, i) != expected:
                    failures.append({"k": k, "trial": trial, "i": i})
    return {
        "criterion": 7,
        "name": "side-of-interpolant agreement",
        "tuples": 10_000,
        "comparisons": checked,
        "failures": failures,
        "passed": not failures,
    }


def criterion_8() -> dict:
    """Planar tuple sign equals lifted orientation sign, dimensions 2..6."""
    rng = random.Random(SEED_LIFT)
    failures = []
    for d in (2, 3, 4, 5, 6):
        for trial in range(10_000):
            seq = random_k_general_sequence(rng, d + 1, d, max_tries=8) \
                if False else None
        # generated inline below for speed
    failures = []
    total = 0
    for d in (2, 3, 4, 5, 6):
        for trial in range(10_000):
            from .randgen import random_point_sequence

            seq = random_point_sequence(rng, d + 1)
            total += 1
            if not lifts.verify_lift_identity(seq, d, tuple(range(d + 1))):
                failures.append({"d": d, "trial": trial})
    return {
        "criterion": 8,
        "name": "lift identity: divided-difference sign vs orientation",
        "tuples": total,
        "failures": failures,
        "passed": not failures and total == 50_000,
    }


def criterion_9() -> dict:
    """One-sided hyperplane subfamilies match order-(d-1) monotone subsets."""
    rng = random.Random(SEED_ONESIDED)
    vertex_mismatches = []
    size_mismatches = []
    instances = 0
    for d in (2, 3, 4):
        for trial in range(50):
            size = rng.randint(max(d + 1, 5), 11)
            seq = random_k_general_sequence(rng, size, d - 1)
            family = lifts.family_from_sequence(seq, d)
            evaluator = SignEvaluator(seq, d - 1, memoize=False)
            instances += 1
            for combo in combinations(range(size), d):
                vertex = lifts.vertex_of_hyperplanes(
                    [family.hyperplanes[i] for i in combo]
                )
                vsign = 1 if vertex[-1] > 0 else (-1 if vertex[-1] < 0 else 0)
                if vsign != evaluator.sign(combo):
                    vertex_mismatches.append({"d": d, "trial": trial, "combo": list(combo)})
            reduction = lifts.max_one_sided_subset(family)
            brute = lifts.max_one_sided_bruteforce(family)
            if reduction.length != brute.length:
                size_mismatches.append({"d": d, "trial": trial})
    return {
        "criterion": 9,
        "name": "one-sided correspondence and oracle equality",
        "instances": instances,
        "vertex_mismatches": vertex_mismatches,
        "size_mismatches": size_mismatches,
        "passed": not vertex_mismatches and not size_mismatches,
    }


def criterion_10() -> dict:
    """Extraction homogeneity, derived-coloring transitivity, exact bounds."""
    rng = random.Random(SEED_EXTRACT)
    homogeneity_failures = []
    derived_failures = []
    for trial in range(100):
        k = rng.choice((2, 3))
        size = rng.randint(k + 3, 14)
        seq = random_k_general_sequence(rng, size, k)
        coloring = geometric_coloring(seq, k)
        target = rng.randint(2, 5)
        outcome = search.erdos_rado_extract(coloring, target)
        idx = outcome.result.indices
        colors = {
            coloring.color_of(t) for t in combinations(idx, coloring.arity)
        }
        if colors and colors != {outcome.result.color}:
            homogeneity_failures.append({"trial": trial, "indices": list(idx)})
        if size > coloring.arity:
            derived = derived_coloring(coloring, range(size - 1), size - 1)
            if is_transitive(derived) is not True:
                derived_failures.append({"trial": trial})
    towers = {
        "tower(1,5)": search.tower(1, 5),
        "tower(2,3)": search.tower(2, 3),
        "tower(3,2)": search.tower(3, 2),
    }
    bounds = {
        "first_order_n5": search.known_bounds(1, 5).known_lower,
        "second_order_n5": search.known_bounds(2, 5).known_lower,
        "third_order_n7_lower": search.known_bounds(3, 7).known_lower,
    }
    bounds_ok = (
        bounds["first_order_n5"] == 17
        and bounds["second_order_n5"] == 21
        and bounds["third_order_n7_lower"] == 17
        and towers == {"tower(1,5)": 5, "tower(2,3)": 8, "tower(3,2)": 16}
    )
    return {
        "criterion": 10,
        "name": "extraction homogeneity, derived transitivity, exact bounds",
        "homogeneity_failures": homogeneity_failures,
        "derived_failures": derived_failures,
        "towers": towers,
        "bounds": bounds,
        "passed": not homogeneity_failures and not derived_failures and bounds_ok,
    }


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_criterion(number: int) -> dict:
    return CRITERIA[number]()
