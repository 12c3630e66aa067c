"""Recursive doubly-exponential sets with no large third-order monotone subset.

Each generation squares the point count: every point p of the parent set is
replaced by a shrunken affine copy of the whole parent (a *cluster*) placed
in a thin rectangle at p and lifted onto a steep upward parabola vanishing
at p's x-coordinate.  Steep separating parabolas force the sign of every
4-tuple that straddles clusters to depend only on how the tuple distributes
over clusters (its *type*, an ordered composition of 4), while 4-tuples
inside one cluster or meeting four distinct clusters inherit the parent's
signs.  Two opposite-sign types can be drawn from any candidate subset that
is too large, which is what caps third-order monotone subsets.

Instead of assuming the steepness is "large enough", the generator verifies
the produced set exactly (sign table, cluster separation, slope separation)
and doubles the steepness until verification passes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import ConstructionError, DimensionError, SizeCapError
from .geometry import (
    PlanarPoint,
    PointSequence,
    SignEvaluator,
    is_k_general_position,
    sequence,
    sequence_from_json_dict,
    sequence_to_json_dict,
)
from .numerics import format_rational, parse_rational

BOX_X_MIN = Fraction(1)
BOX_X_MAX = Fraction(19, 10)
BOX_Y_MIN = Fraction(0)
BOX_Y_MAX = Fraction(1)

# Pinned 4-point seed inside [1, 19/10] x [0, 1], checked 3-general at load.
DEFAULT_BASE = sequence(
    [("1", "0"), ("13/10", "1"), ("8/5", "1/10"), ("19/10", "9/10")]
)

DEFAULT_STEEPNESS = Fraction(1024)

TupleType = tuple[int, ...]

_SIGN_BY_TYPE: dict[TupleType, int] = {
    (3, 1): -1,
    (1, 3): -1,
    (1, 1, 2): 1,
    (2, 1, 1): 1,
    (1, 2, 1): -1,
    (2, 2): 1,
}
_INHERITED_TYPES = {(4,), (1, 1, 1, 1)}


def expected_sign_by_type(composition: TupleType) -> int | None:
    """Sign forced by a 4-tuple's cluster distribution; None means the sign
    is inherited from the corresponding parent-level 4-tuple."""
    key = tuple(composition)
    if sum(key) != 4 or any(part < 1 for part in key):
        raise ValueError(f"{key} is not an ordered composition of 4")
    if key in _INHERITED_TYPES:
        return None
    return _SIGN_BY_TYPE[key]


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of the latest generation step.

    ``cluster_width`` is pinned to 1/steepness^2: the width of the rectangle
    each cluster is squeezed into (its height is the width squared).
    """

    generation: int
    steepness: Fraction
    cluster_width: Fraction
    base_set: PointSequence

    def __post_init__(self):
        if self.generation < 2:
            raise ValueError("generation starts at 2")
        if self.steepness <= 0:
            raise ValueError("steepness must be positive")
        if self.cluster_width != 1 / self.steepness**2:
            raise ValueError("cluster width must equal 1/steepness^2 exactly")
        if len(self.base_set) != 4:
            raise ValueError("base set must have exactly 4 points")
        for p in self.base_set:
            if not (BOX_X_MIN <= p.x <= BOX_X_MAX and BOX_Y_MIN <= p.y <= BOX_Y_MAX):
                raise ValueError(f"base point {p} outside [1, 19/10] x [0, 1]")
        ok, witness = is_k_general_position(self.base_set, 3)
        if not ok:
            raise ValueError(f"base set is not 3-general: zero sign at {witness}")


@dataclass(frozen=True)
class ClusteredSet:
    """A generated set plus per-point cluster provenance.

    ``anchors`` are the parent generation's points carried into the current
    coordinate frame; cluster j is the copy planted at anchor j.  Position i
    within a cluster corresponds to parent point i, so signs of 4-tuples of
    the inherited types can be re-derived from the anchors alone.  For the
    base generation every point is its own (singleton) cluster and anchors
    coincide with the points.
    """

    points: PointSequence
    cluster_of: tuple[int, ...]
    anchors: PointSequence
    params: ConstructionParams

    def __post_init__(self):
        n = len(self.points)
        if len(self.cluster_of) != n:
            raise ValueError("cluster_of length must match point count")
        m = len(self.anchors)
        if self.params.generation == 2:
            if self.cluster_of != tuple(range(n)) or self.anchors.points != self.points.points:
                raise ValueError("base generation must have singleton clusters")
            return
        if n != m * m:
            raise ValueError(f"{n} points but {m} anchors; expected {m * m} points")
        if self.cluster_of != tuple(j for j in range(m) for _ in range(m)):
            raise ValueError("clusters must be contiguous x-ordered blocks of parent size")

    @property
    def cluster_count(self) -> int:
        return len(self.anchors)

    @property
    def cluster_size(self) -> int:
        return len(self.points) // len(self.anchors)

    def position_within_cluster(self, index: int) -> int:
        return index - self.cluster_of[index] * self.cluster_size


def tuple_type(cs: ClusteredSet, indices: Sequence[int]) -> TupleType:
    """Ordered composition of 4 recording how the tuple meets the clusters."""
    idx = tuple(indices)
    if len(idx) != 4:
        raise DimensionError(f"need 4 indices, got {len(idx)}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] >= len(cs.points):
        raise IndexError(f"indices {idx} out of range")
    parts: list[int] = []
    previous = None
    for i in idx:
        c = cs.cluster_of[i]
        if c == previous:
            parts[-1] += 1
        else:
            parts.append(1)
            previous = c
    return tuple(parts)


def _interval_sign_order3(boxes) -> int:
    """Order-3 divided-difference sign certified over four axis-aligned boxes.

    ``boxes`` are (x_lo, x_hi, y_lo, y_hi) with strictly separated x-ranges
    in increasing order.  Returns +1 or -1 when *every* choice of one point
    per box yields that sign, and 0 when the exact interval evaluation
    cannot exclude zero (no certificate).
    """
    los = [b[2] for b in boxes]
    his = [b[3] for b in boxes]
    m = len(boxes)
    for level in range(1, m):
        new_los = []
        new_his = []
        for j in range(m - level):
            lo = los[j + 1] - his[j]
            hi = his[j + 1] - los[j]
            width_lo = boxes[j + level][0] - boxes[j][1]
            width_hi = boxes[j + level][1] - boxes[j][0]
            if width_lo <= 0:
                return 0
            new_los.append(lo / width_hi if lo >= 0 else lo / width_lo)
            new_his.append(hi / width_lo if hi >= 0 else hi / width_hi)
        los, his = new_los, new_his
    if los[0] > 0:
        return 1
    if his[0] < 0:
        return -1
    return 0


def _cluster_boxes(cs: ClusteredSet) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    size = cs.cluster_size
    boxes = []
    for j in range(cs.cluster_count):
        block = cs.points.points[j * size : (j + 1) * size]
        ys = [p.y for p in block]
        boxes.append((block[0].x, block[-1].x, min(ys), max(ys)))
    return boxes


def certify_separated_tuples(
    cs: ClusteredSet, max_witnesses: int = 5
) -> tuple[bool, list[dict]]:
    """Certify every 4-tuple meeting four distinct clusters in one sweep.

    Such tuples must inherit the sign of their anchor 4-tuple.  Evaluating
    the divided difference in exact interval arithmetic over the cluster
    bounding boxes proves the sign for all point choices at once; the sweep
    over anchor combinations therefore covers every distinct-cluster tuple
    without enumerating them.
    """
    boxes = _cluster_boxes(cs)
    anchor_eval = SignEvaluator(cs.anchors, 3, memoize=False)
    witnesses: list[dict] = []
    for combo in combinations(range(cs.cluster_count), 4):
        expected = anchor_eval.sign(combo)
        certified = _interval_sign_order3([boxes[c] for c in combo])
        if expected == 0 or certified != expected:
            witnesses.append(
                {
                    "clusters": list(combo),
                    "kind": "separation-certificate",
                    "expected": expected,
                    "certified": certified,
                }
            )
            if len(witnesses) >= max_witnesses:
                break
    return not witnesses, witnesses


def _expected_sign(cs: ClusteredSet, idx: tuple[int, ...], ttype: TupleType,
                   anchor_eval: SignEvaluator) -> int:
    forced = _SIGN_BY_TYPE.get(ttype)
    if forced is not None:
        return forced
    if ttype == (4,):
        size = cs.cluster_size
        base = cs.cluster_of[idx[0]] * size
        parent_idx = tuple(i - base for i in idx)
    else:  # (1, 1, 1, 1)
        parent_idx = tuple(cs.cluster_of[i] for i in idx)
    return anchor_eval.sign(parent_idx)


def _check_tuples(cs: ClusteredSet, tuples: Sequence[tuple[int, ...]],
                  max_witnesses: int) -> tuple[int, dict[str, int], list[dict]]:
    evaluator = SignEvaluator(cs.points, 3, memoize=False)
    anchor_eval = SignEvaluator(cs.anchors, 3, memoize=True)
    counts: dict[str, int] = {}
    witnesses: list[dict] = []
    checked = 0
    for idx in tuples:
        ttype = tuple_type(cs, idx)
        label = "+".join(map(str, ttype))
        counts[label] = counts.get(label, 0) + 1
        actual = evaluator.sign(idx)
        checked += 1
        if actual == 0:
            witnesses.append({"indices": list(idx), "kind": "zero-sign"})
        elif actual != _expected_sign(cs, idx, ttype, anchor_eval):
            witnesses.append(
                {"indices": list(idx), "kind": "sign-mismatch", "type": label}
            )
        if len(witnesses) >= max_witnesses:
            break
    return checked, counts, witnesses


def _check_tuples_job(args) -> tuple[int, dict[str, int], list[dict]]:
    cs, tuples, max_witnesses = args
    return _check_tuples(cs, tuples, max_witnesses)


@dataclass
class VerificationReport:
    passed: bool
    mode: str
    tuples_checked: int
    counts_by_type: dict[str, int]
    witnesses: list[dict]
    structure_ok: bool
    slope_ok: bool
    separated_certified: bool
    max_cross_cluster_slope: Fraction | None = None
    min_intra_cluster_slope: Fraction | None = None
    generation: int = 0
    point_count: int = 0
    steepness: Fraction = field(default_factory=lambda: Fraction(0))

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "tuples_checked": self.tuples_checked,
            "counts_by_type": dict(sorted(self.counts_by_type.items())),
            "witnesses": self.witnesses,
            "structure_ok": self.structure_ok,
            "slope_ok": self.slope_ok,
            "separated_certified": self.separated_certified,
            "max_cross_cluster_slope": (
                None
                if self.max_cross_cluster_slope is None
                else format_rational(self.max_cross_cluster_slope)
            ),
            "min_intra_cluster_slope": (
                None
                if self.min_intra_cluster_slope is None
                else format_rational(self.min_intra_cluster_slope)
            ),
            "generation": self.generation,
            "point_count": self.point_count,
            "steepness": format_rational(self.steepness),
        }


def _structure_ok(cs: ClusteredSet) -> bool:
    # Clusters must occupy disjoint x-ranges in anchor order; block layout is
    # already enforced by the dataclass, so only the strict boundaries remain.
    size = cs.cluster_size
    for j in range(cs.cluster_count - 1):
        left_max = cs.points[(j + 1) * size - 1].x
        right_min = cs.points[(j + 1) * size].x
        if left_max >= right_min:
            return False
    return True


def _slope_extremes(
    cs: ClusteredSet, sample_pairs: int | None, rng: random.Random | None
) -> tuple[Fraction | None, Fraction | None]:
    """Max cross-cluster and min intra-cluster secant slope.

    Exhaustive over all point pairs unless a sample budget is given.
    Singleton clusters (base generation) have no intra-cluster pairs.
    """
    pts = cs.points
    n = len(pts)
    cluster_of = cs.cluster_of
    max_cross: Fraction | None = None
    min_intra: Fraction | None = None

    if sample_pairs is None:
        pair_iter = combinations(range(n), 2)
    else:
        assert rng is not None
        pair_iter = (tuple(sorted(rng.sample(range(n), 2))) for _ in range(sample_pairs))
    for i, j in pair_iter:
        slope = (pts[j].y - pts[i].y) / (pts[j].x - pts[i].x)
        if cluster_of[i] == cluster_of[j]:
            if min_intra is None or slope < min_intra:
                min_intra = slope
        else:
            if max_cross is None or slope > max_cross:
                max_cross = slope
    return max_cross, min_intra


def verify_construction(
    cs: ClusteredSet,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int | None = None,
    max_witnesses: int = 5,
    workers: int = 1,
) -> VerificationReport:
    """Check a clustered set against its defining guarantees.

    (a) every checked 4-tuple has a nonzero sign, (b) that sign matches the
    type table (inherited types resolved against the anchors), (c) clusters
    occupy disjoint x-ranges, (d) every cross-cluster secant line is
    shallower than every intra-cluster one (the separation that drives the
    type table; diagnostic, reported with the extreme slopes), and (e) all
    distinct-cluster 4-tuples carry a box-interval sign certificate, which
    covers that entire type exhaustively even in sampled mode.

    ``mode`` is "exhaustive" (all 4-tuples and pairs) or "sampled"
    (``samples`` seeded random 4-tuples; pairs stay exhaustive up to 512
    points).  Sign checks fan out over ``workers`` processes when asked.
    """
    n = len(cs.points)
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    rng: random.Random | None = None
    if mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode requires an explicit seed")
        rng = random.Random(seed)
        tuples: list[tuple[int, ...]] = [
            tuple(sorted(rng.sample(range(n), 4))) for _ in range(samples)
        ]
    else:
        tuples = list(combinations(range(n), 4))

    structure = _structure_ok(cs)
    certified, cert_witnesses = certify_separated_tuples(cs, max_witnesses)
    pair_budget = None if n <= 512 else max(len(tuples), 1)
    max_cross, min_intra = _slope_extremes(cs, pair_budget, rng)
    if min_intra is None or max_cross is None:
        slope_ok = True  # base generation: no intra-cluster pairs to separate
    else:
        slope_ok = max_cross < min_intra

    if workers > 1 and len(tuples) >= 4 * workers:
        chunk = (len(tuples) + workers - 1) // workers
        jobs = [
            (cs, tuples[i : i + chunk], max_witnesses)
            for i in range(0, len(tuples), chunk)
        ]
        checked = 0
        counts: dict[str, int] = {}
        witnesses: list[dict] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part_checked, part_counts, part_witnesses in pool.map(
                _check_tuples_job, jobs
            ):
                checked += part_checked
                for key, value in part_counts.items():
                    counts[key] = counts.get(key, 0) + value
                witnesses.extend(part_witnesses)
        witnesses = witnesses[:max_witnesses]
    else:
        checked, counts, witnesses = _check_tuples(cs, tuples, max_witnesses)
    witnesses = (witnesses + cert_witnesses)[:max_witnesses]

    passed = structure and slope_ok and certified and not witnesses
    return VerificationReport(
        passed=passed,
        mode=mode if mode == "exhaustive" else f"sampled({len(tuples)},seed={seed})",
        tuples_checked=checked,
        counts_by_type=counts,
        witnesses=witnesses,
        structure_ok=structure,
        slope_ok=slope_ok,
        separated_certified=certified,
        max_cross_cluster_slope=max_cross,
        min_intra_cluster_slope=min_intra,
        generation=cs.params.generation,
        point_count=n,
        steepness=cs.params.steepness,
    )


def base_clustered_set(
    base: PointSequence | None = None, steepness: Fraction = DEFAULT_STEEPNESS
) -> ClusteredSet:
    pts = base if base is not None else DEFAULT_BASE
    params = ConstructionParams(2, steepness, 1 / steepness**2, pts)
    return ClusteredSet(pts, tuple(range(len(pts))), pts, params)


def _renormalize(points: list[PlanarPoint], anchors: list[PlanarPoint]):
    """Axis-aligned affine map of the point bounding box onto [1,19/10]x[0,1].

    Positive per-axis scalings plus shifts, so every divided-difference sign
    is preserved; anchors ride along in the same frame (they may land
    slightly outside the box, which is harmless bookkeeping).
    """
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    sx = (BOX_X_MAX - BOX_X_MIN) / (x_max - x_min)
    sy = (BOX_Y_MAX - BOX_Y_MIN) / (y_max - y_min)

    def remap(p: PlanarPoint) -> PlanarPoint:
        return PlanarPoint(BOX_X_MIN + (p.x - x_min) * sx, BOX_Y_MIN + (p.y - y_min) * sy)

    return [remap(p) for p in points], [remap(p) for p in anchors]


def _build_step(parent: PointSequence, steepness: Fraction):
    """One generation step at a fixed steepness; None when clusters collide.

    Each parent point p becomes the lower-left corner of a width-eps,
    height-eps^2 copy of the whole parent square [1,2]x[0,1], lifted by the
    parabola steepness*(x^2 - x(p)^2) that vanishes at p.
    """
    eps = 1 / steepness**2
    eps2 = eps * eps
    raw: list[PlanarPoint] = []
    cluster_of: list[int] = []
    for j, anchor in enumerate(parent):
        x0 = anchor.x
        y0 = anchor.y
        offset = steepness * x0 * x0
        for q in parent:
            x = eps * (q.x - 1) + x0
            y = eps2 * q.y + y0 + (steepness * x * x - offset)
            raw.append(PlanarPoint(x, y))
            cluster_of.append(j)
    m = len(parent)
    for j in range(m - 1):
        if raw[(j + 1) * m - 1].x >= raw[(j + 1) * m].x:
            return None
    points, anchors = _renormalize(raw, list(parent))
    return points, tuple(cluster_of), anchors


def _fitting_steepness(parent: PointSequence, minimum: Fraction) -> Fraction:
    """Smallest power-of-two multiple of ``minimum`` whose cluster rectangles
    fit strictly inside the parent's x-gaps."""
    gap = min(b.x - a.x for a, b in zip(parent, parent.points[1:]))
    steepness = minimum
    while 1 / steepness**2 >= gap / 2:
        steepness *= 2
    return steepness


def generate_extremal(
    n: int,
    base: PointSequence | None = None,
    initial_steepness: Fraction = DEFAULT_STEEPNESS,
    max_doublings: int = 64,
    max_points: int = 4096,
    step_samples: int = 20_000,
    workers: int = 1,
) -> ClusteredSet:
    """Generation-n set of 2^(2^(n-1)) points with verified sign structure.

    Each step starts from the smallest steepness whose clusters fit between
    the parent points and doubles it until the cheap gates pass (cluster
    separation, then the box-interval certificate for all distinct-cluster
    tuples, which is the binding constraint: the parent's tightest 4-tuples
    dictate how small the cluster drift must be).  The surviving candidate
    then gets the full verification (exhaustive up to 16 points, otherwise
    ``step_samples`` internally seeded samples plus slope separation); any
    failure doubles again.  The steepness that passed is recorded in the
    result's params.
    """
    if n < 2:
        raise ValueError("generation starts at 2")
    if n > 6 or 2 ** (2 ** (n - 1)) > max_points:
        raise SizeCapError(
            f"generation {n} needs 2^(2^{n - 1}) points, over the cap {max_points}"
        )
    cs = base_clustered_set(base, initial_steepness)
    for gen in range(3, n + 1):
        parent = cs.points
        steepness = _fitting_steepness(parent, initial_steepness)
        built = None
        for _ in range(max_doublings + 1):
            step = _build_step(parent, steepness)
            if step is not None:
                points, cluster_of, anchors = step
                candidate = ClusteredSet(
                    PointSequence(tuple(points)),
                    cluster_of,
                    PointSequence(tuple(anchors)),
                    ConstructionParams(gen, steepness, 1 / steepness**2, cs.params.base_set),
                )
                certified, _ = certify_separated_tuples(candidate, max_witnesses=1)
                if certified and _structure_ok(candidate):
                    small = len(points) <= 16
                    report = verify_construction(
                        candidate,
                        mode="exhaustive" if small else "sampled",
                        samples=step_samples,
                        seed=0,
                        max_witnesses=1,
                        workers=workers,
                    )
                    if report.passed:
                        built = candidate
                        break
            steepness *= 2
        if built is None:
            raise ConstructionError(
                f"no verified generation-{gen} set within {max_doublings} doublings"
            )
        cs = built
    return cs


def block_sequence(block: int) -> PointSequence:
    """block^2 integer points in descending blocks of ascending runs.

    The longest monotone subset (either direction) has exactly ``block``
    points: an increasing subset cannot leave a block downward and a
    decreasing one takes at most one point per block.
    """
    if block < 1:
        raise ValueError("block must be positive")
    pts = []
    for g in range(block):
        for i in range(block):
            pts.append((g * block + i, (block - 1 - g) * block + i))
    return sequence(pts)


def clustered_set_to_json_dict(cs: ClusteredSet) -> dict:
    return {
        "points": sequence_to_json_dict(cs.points)["points"],
        "cluster_of": list(cs.cluster_of),
        "anchors": sequence_to_json_dict(cs.anchors)["points"],
        "params": {
            "generation": cs.params.generation,
            "steepness": format_rational(cs.params.steepness),
            "cluster_width": format_rational(cs.params.cluster_width),
            "base_set": sequence_to_json_dict(cs.params.base_set)["points"],
        },
    }


def clustered_set_from_json_dict(data: dict) -> ClusteredSet:
    params = ConstructionParams(
        data["params"]["generation"],
        parse_rational(data["params"]["steepness"]),
        parse_rational(data["params"]["cluster_width"]),
        sequence_from_json_dict({"points": data["params"]["base_set"]}),
    )
    return ClusteredSet(
        sequence_from_json_dict({"points": data["points"]}),
        tuple(data["cluster_of"]),
        sequence_from_json_dict({"points": data["anchors"]}),
        params,
    )
