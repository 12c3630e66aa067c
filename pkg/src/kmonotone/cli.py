"""Command-line interface: reproducible generation, search and verification runs.

Every subcommand writes a canonical JSON report (sorted keys, two-space
indent, trailing newline) to --out or stdout, so identical configurations
produce byte-identical files.  Exit codes: 0 success / verified, 1 a check
failed and the report carries a witness, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations
from pathlib import Path

from . import construction, lifts, search
from .colorings import (
    coloring_from_json_dict,
    geometric_coloring,
    is_transitive,
)
from .errors import ConstructionError, DegeneracyError, SizeCapError
from .geometry import PointSequence, sequence_from_json_dict, sequence_to_json_dict


def canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _emit(report: dict, out: str | None) -> None:
    text = canonical_json(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _load_sequence(path: str) -> PointSequence:
    data = _load_json(path)
    if "cluster_of" in data:
        return construction.clustered_set_from_json_dict(data).points
    return sequence_from_json_dict(data)


def _cmd_generate(args) -> int:
    cs = construction.generate_extremal(
        args.n, max_points=args.max_points, workers=args.workers
    )
    _emit(construction.clustered_set_to_json_dict(cs), args.out)
    return 0


def _cmd_search(args) -> int:
    seq = _load_sequence(getattr(args, "in"))
    result = search.longest_kth_order_monotone(seq, args.k)
    report = {
        "command": "search",
        "k": args.k,
        "point_count": len(seq),
        "result": result.to_json_dict(),
    }
    _emit(report, args.out)
    return 0


def _cmd_verify(args) -> int:
    data = _load_json(getattr(args, "in"))
    cs = construction.clustered_set_from_json_dict(data)
    report = construction.verify_construction(
        cs,
        mode=args.mode,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    _emit({"command": "verify", **report.to_json_dict()}, args.out)
    return 0 if report.passed else 1


def _cmd_transitivity(args) -> int:
    data = _load_json(getattr(args, "in"))
    if "colors" in data:
        coloring = coloring_from_json_dict(data)
    else:
        if args.k is None:
            raise SystemExit2("--k is required for point-sequence input")
        seq = _load_sequence(getattr(args, "in"))
        coloring = geometric_coloring(seq, args.k)
    verdict = is_transitive(coloring, weak=args.weak)
    report = {
        "command": "transitivity",
        "ground_size": coloring.ground_size,
        "arity": coloring.arity,
        "weak": args.weak,
        "transitive": verdict is True,
        "witness": None
        if verdict is True
        else {"indices": list(verdict.indices), "offending": list(verdict.offending)},
    }
    _emit(report, args.out)
    return 0 if verdict is True else 1


def _cmd_lift_check(args) -> int:
    seq = _load_sequence(getattr(args, "in"))
    n = len(seq)
    d = args.d
    if args.mode == "exhaustive":
        tuples = list(combinations(range(n), d + 1))
    else:
        if args.seed is None:
            raise SystemExit2("sampled mode requires --seed")
        rng = random.Random(args.seed)
        tuples = [tuple(sorted(rng.sample(range(n), d + 1))) for _ in range(args.samples)]
    failures = []
    for idx in tuples:
        if not lifts.verify_lift_identity(seq, d, idx):
            failures.append(list(idx))
            if len(failures) >= 5:
                break
    report = {
        "command": "lift-check",
        "d": d,
        "point_count": n,
        "mode": args.mode,
        "tuples_checked": len(tuples),
        "all_consistent": not failures,
        "failures": failures,
    }
    _emit(report, args.out)
    return 0 if not failures else 1


def _cmd_hyperplanes(args) -> int:
    seq = _load_sequence(getattr(args, "in"))
    family = lifts.family_from_sequence(seq, args.d)
    result = lifts.max_one_sided_subset(family)
    report = {
        "command": "hyperplanes",
        "d": args.d,
        "family_size": len(family),
        "max_one_sided": result.to_json_dict(),
    }
    if len(family) <= args.bruteforce_cap:
        brute = lifts.max_one_sided_bruteforce(family, cap=args.bruteforce_cap)
        report["bruteforce"] = brute.to_json_dict()
        report["consistent"] = brute.length == result.length
        _emit(report, args.out)
        return 0 if report["consistent"] else 1
    _emit(report, args.out)
    return 0


def _cmd_bounds(args) -> int:
    report = search.known_bounds(args.k, args.n)
    _emit({"command": "bounds", **report.to_json_dict()}, args.out)
    return 0


class SystemExit2(Exception):
    """Usage error that should surface as exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmonotone",
        description="Exact search and verification for higher-order monotone subsets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, out=True, workers=False):
        if out:
            p.add_argument("--out", help="write the JSON report here instead of stdout")
        if workers:
            p.add_argument("--workers", type=int, default=1, help="parallel verification workers")

    p = sub.add_parser("generate", help="generate a verified doubly-exponential set")
    p.add_argument("--n", type=int, required=True, help="generation (2 gives 4 points, 3 gives 16, 4 gives 256)")
    p.add_argument("--max-points", type=int, default=4096)
    add_common(p, workers=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("search", help="largest k-th-order monotone subset (path DP)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--in", required=True, help="point-sequence or clustered-set JSON")
    add_common(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", help="check a clustered set against the sign table")
    p.add_argument("--in", required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    add_common(p, workers=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("transitivity", help="exhaustive transitivity check of a coloring")
    p.add_argument("--in", required=True, help="explicit coloring or point-sequence JSON")
    p.add_argument("--k", type=int, default=None, help="order for point-sequence input")
    p.add_argument("--weak", action="store_true", help="check only the relaxed condition")
    add_common(p)
    p.set_defaults(func=_cmd_transitivity)

    p = sub.add_parser("lift-check", help="planar sign vs lifted orientation consistency")
    p.add_argument("--in", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_lift_check)

    p = sub.add_parser("hyperplanes", help="largest one-sided subfamily via the planar reduction")
    p.add_argument("--in", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bruteforce-cap", type=int, default=11, help="cross-check ceiling")
    add_common(p)
    p.set_defaults(func=_cmd_hyperplanes)

    p = sub.add_parser("bounds", help="known extremal sizes for guaranteed subsets")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0, None) else 0
    try:
        if getattr(args, "mode", None) == "sampled" and getattr(args, "seed", None) is None:
            raise SystemExit2("sampled mode requires an explicit --seed")
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegeneracyError, ConstructionError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (SizeCapError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
