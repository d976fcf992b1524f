"""Command-line interface.

Exit status is 0 when every check passes, 1 when a check fails and 2 when
a request is refused (bad arguments, cutoffs, malformed input).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__
from ._backend import BACKEND
from .compositions import gen_odd_set_compositions
from .harness import (
    AUDIT_CUTOFFS,
    IDENTITIES,
    AuditReport,
    CutoffError,
    IdentityReport,
    audit,
    report_emit,
    verify_range,
)
from .kappa import kappa_trace
from .numbers import METHODS, hat_T, q_secant, q_secant_odd, q_tangent, secant_int, tangent_int, tilde_T
from .pairs import FAMILIES, PermutationPair, gen_CP, gen_IP, gen_UP, h_branch, f_branch, g_branch, pair_inv, pair_sign, wt
from .trees import from_json, gen_labeled_trees, half_edges, inv_tree, to_json, validate_tree, word_of

SEQUENCES = ("tangent", "secant", "q-tangent", "q-secant", "q-secant-odd", "tilde-t", "hat-t")
PAIR_SETS = {"ip": gen_IP, "up": gen_UP, "cp": gen_CP}
BRANCH = {"f": f_branch, "g": g_branch, "h": h_branch}


def _sequence_value(seq: str, n: int, method: str):
    if seq == "tangent":
        return tangent_int(n)
    if seq == "secant":
        return secant_int(n)
    if seq == "q-tangent":
        return q_tangent(n, method)
    if seq == "q-secant":
        return q_secant(n, method)
    if seq == "q-secant-odd":
        return q_secant_odd(n)
    if seq == "tilde-t":
        return tilde_T(n, method)
    return hat_T(n, method)


def cmd_numbers(args) -> int:
    rows = [{"seq": args.seq, "n": i, "value": _sequence_value(args.seq, i, args.method)} for i in range(args.n + 1)]
    report_emit(rows, args.format, args.out)
    return 0


def cmd_enumerate(args) -> int:
    rows: list[dict] = []
    if args.object == "trees":
        for t in gen_labeled_trees(args.n):
            rows.append({"tree": to_json(t), "word": list(word_of(t)), "half_edges": half_edges(t), "inv": inv_tree(t)})
    elif args.object == "odd-set-compositions":
        ks = [args.k] if args.k is not None else range(1, args.n + 1, 2)
        for k in ks:
            for phi in gen_odd_set_compositions(args.n, k):
                rows.append({"blocks": k, "composition": [list(b) for b in phi]})
    else:
        for p in PAIR_SETS[args.pairs](args.n):
            stat = wt(p) if args.pairs == "cp" else pair_inv(p)
            rows.append({"pi": list(p.pi), "sigma": list(p.sigma), "sign": pair_sign(p), "weight": stat})
    if args.count:
        rows = [{"object": args.object, "n": args.n, "count": len(rows)}]
    report_emit(rows, args.format, args.out)
    return 0


def _indicator_json(x):
    if x is None:
        return None
    return "inf" if x == math.inf else int(x)


def cmd_trace(args) -> int:
    raw = sys.stdin.read() if args.input == "-" else args.input
    obj = json.loads(raw)
    if args.object == "tree":
        t = from_json(obj)
        validate_tree(t)
        tr = kappa_trace(t, validate=True)
        row = {
            "case": tr.case,
            "active_index": tr.active_index,
            "ind_l": _indicator_json(tr.ind_l),
            "ind_r": _indicator_json(tr.ind_r),
            "input": to_json(t),
            "image": to_json(tr.image),
        }
    else:
        p = PermutationPair.of(obj["pi"], obj["sigma"])
        involution = FAMILIES[args.family][1]
        image = involution(p)
        row = {
            "family": args.family,
            "branch": BRANCH[args.family](p),
            "input": p.to_json(),
            "image": image.to_json(),
        }
    report_emit([row], args.format, args.out)
    return 0


def cmd_verify(args) -> int:
    ids = sorted(IDENTITIES) if args.identity == "all" else [args.identity]
    reports: list[IdentityReport] = []
    for iid in ids:
        n_max = args.n_max
        if args.identity == "all":
            n_max = min(n_max, IDENTITIES[iid].cutoff if args.cutoff is None else args.cutoff)
        reports.extend(verify_range(iid, n_max, args.n_min, args.cutoff))
    report_emit(reports, args.format, args.out, timings=args.timings, record_type=IdentityReport)
    return 0 if all(r.equal for r in reports) else 1


def cmd_audit(args) -> int:
    if args.sample is not None:
        if args.seed is None:
            raise ValueError("--sample needs --seed")
        report = audit(args.family, args.n, "sample", count=args.sample, seed=args.seed, jobs=args.jobs)
    else:
        report = audit(args.family, args.n, jobs=args.jobs, deep=args.deep)
    report_emit([report], args.format, args.out, timings=args.timings, record_type=AuditReport)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write to this path instead of standard output")
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS, help="include elapsed_ms")

    parser = argparse.ArgumentParser(
        prog="catalan-tangent",
        description="Tangent/Catalan identities, tree and pair involutions, and their audits.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("numbers", parents=[common], help="integer and q-analog sequences for 0..N")
    p.add_argument("--seq", choices=SEQUENCES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="recurrence")
    p.set_defaults(func=cmd_numbers)

    p = sub.add_parser("enumerate", parents=[common], help="list every object of a family")
    p.add_argument("--object", choices=("trees", "odd-set-compositions", "pairs"), required=True)
    p.add_argument("--n", type=int, required=True, help="trees: LB_{2n+1}; compositions: of [n]; pairs: family index")
    p.add_argument("--k", type=int, help="number of blocks (compositions only)")
    p.add_argument("--pairs", choices=sorted(PAIR_SETS), default="ip", help="IP_{2n+1}, UP_{2n+2} or CP_{2n}")
    p.add_argument("--count", action="store_true", help="report only the number of objects")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("involution", parents=[common], help="apply an involution to one object")
    isub = p.add_subparsers(dest="action", required=True)
    t = isub.add_parser("trace", parents=[common], help="show the case taken and the image")
    t.add_argument("--object", choices=("tree", "pair"), required=True)
    t.add_argument("--family", choices=("f", "g", "h"), default="f", help="pair involution")
    t.add_argument("--input", default="-", help="JSON object, or - for standard input")
    t.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", parents=[common], help="check an identity for each n up to N")
    p.add_argument("--identity", choices=sorted(IDENTITIES) + ["all"], required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-min", type=int, help="default: first n the identity is stated for")
    p.add_argument("--cutoff", type=int, help="override the per-identity size limit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", parents=[common], help="audit an involution exhaustively or by sampling")
    p.add_argument("--family", choices=sorted(AUDIT_CUTOFFS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="allow exhaustive runs past the default cutoff")
    p.add_argument("--sample", type=int, metavar="COUNT")
    p.add_argument("--seed")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("format", "text"), ("jobs", 1), ("out", None), ("timings", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except (CutoffError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
