"""Identity verification and involution audits.

Every identity is evaluated twice along paths that share no code beyond
exact arithmetic: the left side as a finite sum over ``k`` using
:mod:`catalan_tangent.numbers` and :mod:`catalan_tangent.qlaurent`, the right
side by enumeration or by an unrelated formula.  Audits apply an involution
to every object of a family (or to a seeded uniform sample) and record each
property that fails, with the offending object serialized in full.

Reports are deterministic.  Timings are measured but only serialized on
request, since they would make otherwise identical runs differ.
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from math import comb
from typing import Callable, Iterable, Iterator, Optional, Sequence, TextIO, Union

from ._backend import kernels
from .compositions import count_O, count_O_multinomial, gen_odd_set_compositions
from .numbers import (
    catalan,
    hat_T,
    q_secant,
    q_secant_odd,
    q_tangent,
    tangent_int,
    tilde_T,
)
from .pairs import (
    FAMILIES,
    PairDomainError,
    PermutationPair,
    pair_inv,
    pair_sign,
    wt,
)
from .qlaurent import ZERO, LaurentPoly, neg_q_pochhammer, q_binomial
from .trees import (
    _preorder_template,
    decode,
    gen_complete_shapes,
    gen_labeled_trees,
    half_edges,
    inv_tree,
    random_code,
    to_json,
)
from .words import DOWN_UP, is_alternating, is_increasing_word

__all__ = [
    "IdentityReport",
    "AuditReport",
    "IDENTITIES",
    "AUDIT_CUTOFFS",
    "CutoffError",
    "verify",
    "verify_range",
    "audit",
    "report_emit",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
Value = Union[int, LaurentPoly]


class CutoffError(ValueError):
    """``n`` is above the desk-scale limit configured for a check."""


@dataclass
class IdentityReport:
    identity_id: str
    n: int
    lhs: Value
    rhs: Value
    equal: bool
    elapsed_ms: int
    method: str  # how the right side was obtained: enumeration | formula

    @property
    def ok(self) -> bool:
        return self.equal


@dataclass
class AuditReport:
    object_family: str
    n: int
    population: int
    fixed_points: int
    violations: list = field(default_factory=list)
    mode: str = "exhaustive"
    seed: Optional[str] = None
    signed_sum: Optional[LaurentPoly] = None  # exhaustive mode only
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


# integer identities -----------------------------------------------------------


def _cat_tan(n: int) -> tuple[Value, Value]:
    # O by the multinomial sum, independent of the recursion trees.py uses
    lhs = sum(_sgn(k) * count_O_multinomial(2 * n + 1, 2 * k + 1) * 2 ** (2 * n - 2 * k) * catalan(k) for k in range(n + 1))
    return lhs, _sgn(n) * tangent_int(n)


def _genocchi(n: int) -> tuple[Value, Value]:
    lhs = sum(_sgn(k) * comb(2 * n, 2 * k + 1) * 2 ** (2 * n - 2 * k) * tangent_int(k) for k in range(n))
    return lhs, 2 ** (2 * n + 1)


def _tan2(n: int) -> tuple[Value, Value]:
    lhs = sum(_sgn(k) * comb(2 * n + 1, 2 * k) * 2 ** (2 * n - 2 * k) * tangent_int(k) for k in range(n + 1))
    return lhs, _sgn(n) * tangent_int(n)


def _andrews_gessel(n: int) -> tuple[Value, Value]:
    lhs = tangent_int(n) + sum(
        _sgn(k) * comb(2 * n + 1, 2 * k) * 2 ** (2 * k - 1) * tangent_int(n - k) for k in range(1, n + 1)
    )
    return lhs, _sgn(n) * 2 ** (2 * n)


# tree identities --------------------------------------------------------------


def _signed_trees(n: int) -> tuple[Value, Value]:
    lhs = sum(_sgn(half_edges(t)) for t in gen_labeled_trees(n))
    rhs = sum(_sgn(k) * count_O(2 * n + 1, 2 * k + 1) * 2 ** (2 * n - 2 * k) * catalan(k) for k in range(n + 1))
    return lhs, rhs


def _signed_trees_q(n: int) -> tuple[Value, Value]:
    counts: dict[int, int] = {}
    for t in gen_labeled_trees(n):
        e = inv_tree(t)
        counts[e] = counts.get(e, 0) + _sgn(half_edges(t))
    return LaurentPoly.from_terms(counts), _sgn(n) * q_tangent(n, "recurrence")


# q-identities -------------------------------------------------------------------
# left sides use recurrence-path T(q), S(q); right sides enumerate permutations


def _q1(n: int) -> tuple[Value, Value]:
    lhs = ZERO
    for k in range(n + 1):
        lhs += _sgn(k) * q_binomial(2 * n + 1, 2 * k) * neg_q_pochhammer(2 * n - 2 * k) * tilde_T(k, "recurrence")
    return lhs, _sgn(n) * q_tangent(n, "enumerate")


def _q2(n: int) -> tuple[Value, Value]:
    lhs = ZERO
    for k in range(n + 1):
        lhs += _sgn(k) * q_binomial(2 * n + 1, 2 * k) * neg_q_pochhammer(2 * n - 2 * k) * q_tangent(k, "recurrence")
    return lhs, _sgn(n) * hat_T(n, "enumerate")


def _q2_vanishing(n: int) -> tuple[Value, Value]:
    lhs = ZERO
    for k in range(n + 1):
        inner = neg_q_pochhammer(2 * n - 2 * k) * q_tangent(k, "enumerate") - q_secant(k, "enumerate").shift(2 * k)
        lhs += _sgn(k) * q_binomial(2 * n + 1, 2 * k) * inner
    return lhs, ZERO


def _q_sec_tan(n: int) -> tuple[Value, Value]:
    lhs = ZERO
    for k in range(n + 1):
        lhs += _sgn(k) * q_binomial(2 * n + 1, 2 * k) * q_secant(k, "recurrence")
    return lhs, _sgn(n) * q_tangent(n, "enumerate")


def _huber_yee(n: int) -> tuple[Value, Value]:
    lhs = ZERO
    for k in range(n + 1):
        lhs += _sgn(k) * q_binomial(2 * n, 2 * k) * q_secant_odd(k).shift((n - k) ** 2)
    return lhs, ZERO


@dataclass(frozen=True)
class IdentitySpec:
    func: Callable[[int], tuple[Value, Value]]
    first: int  # smallest n the identity is claimed for
    cutoff: int  # largest n run by default
    method: str
    summary: str


IDENTITIES: dict[str, IdentitySpec] = {
    "cat_tan": IdentitySpec(_cat_tan, 0, 40, "formula", "sum (-1)^k O(2n+1,2k+1) 2^(2n-2k) C_k = (-1)^n T_{2n+1}"),
    "genocchi": IdentitySpec(_genocchi, 1, 200, "formula", "sum_{k<n} (-1)^k C(2n,2k+1) 2^(2n-2k) T_{2k+1} = 2^(2n+1)"),
    "tan2": IdentitySpec(_tan2, 0, 200, "formula", "sum (-1)^k C(2n+1,2k) 2^(2n-2k) T_{2k+1} = (-1)^n T_{2n+1}"),
    "andrews_gessel": IdentitySpec(
        _andrews_gessel, 0, 200, "formula", "T_{2n+1} + sum_{k>=1} (-1)^k C(2n+1,2k) 2^(2k-1) T_{2n-2k+1} = (-1)^n 4^n"
    ),
    "signed_trees": IdentitySpec(_signed_trees, 0, 3, "enumeration", "sum over LB of (-1)^h(T) = the O/C sum"),
    "signed_trees_q": IdentitySpec(_signed_trees_q, 0, 3, "formula", "sum over LB of (-1)^h(T) q^inv(T) = (-1)^n T_{2n+1}(q)"),
    "q1": IdentitySpec(_q1, 0, 5, "enumeration", "sum (-1)^k [2n+1,2k] (-q;q)_{2n-2k} tilde T_{2k+1}(q) = (-1)^n T_{2n+1}(q)"),
    "q2": IdentitySpec(_q2, 0, 5, "enumeration", "sum (-1)^k [2n+1,2k] (-q;q)_{2n-2k} T_{2k+1}(q) = (-1)^n hat T_{2n+1}(q)"),
    "q2_vanishing": IdentitySpec(
        _q2_vanishing, 0, 5, "formula", "sum (-1)^k [2n+1,2k] ((-q;q)_{2n-2k} T_{2k+1}(q) - q^(2k) S_{2k}(q)) = 0"
    ),
    "q_sec_tan": IdentitySpec(_q_sec_tan, 0, 5, "enumeration", "sum (-1)^k [2n+1,2k] S_{2k}(q) = (-1)^n T_{2n+1}(q)"),
    "huber_yee": IdentitySpec(_huber_yee, 1, 5, "formula", "sum (-1)^k [2n,2k] q^((n-k)^2) S^o_{2k}(q) = 0"),
}


def verify(identity_id: str, n: int, cutoff: Optional[int] = None) -> IdentityReport:
    """Evaluate both sides of one identity at ``n`` and compare exactly.

    ``n`` below the identity's first claimed value is evaluated anyway and
    reported as it comes out; ``n`` above the cutoff raises
    :class:`CutoffError`.
    """
    try:
        spec = IDENTITIES[identity_id]
    except KeyError:
        raise ValueError(f"unknown identity {identity_id!r}; choose from {sorted(IDENTITIES)}") from None
    if n < 0:
        raise ValueError("n must be nonnegative")
    limit = spec.cutoff if cutoff is None else cutoff
    if n > limit:
        raise CutoffError(f"{identity_id} at n={n} is above the cutoff {limit}; raise it with --cutoff")
    start = time.perf_counter()
    lhs, rhs = spec.func(n)
    elapsed = int((time.perf_counter() - start) * 1000)
    return IdentityReport(identity_id, n, lhs, rhs, lhs == rhs, elapsed, spec.method)


def verify_range(identity_id: str, n_max: int, n_min: Optional[int] = None, cutoff: Optional[int] = None) -> list[IdentityReport]:
    """``verify`` for every ``n`` from the identity's first value (or ``n_min``) to ``n_max``."""
    lo = IDENTITIES[identity_id].first if n_min is None else n_min
    return [verify(identity_id, n, cutoff) for n in range(lo, n_max + 1)]


# audits -------------------------------------------------------------------------

AUDIT_CUTOFFS = {"kappa": 3, "f": 3, "g": 3, "h": 4}
DEEP_CUTOFFS = {"kappa": 4, "f": 5, "g": 5, "h": 6}
SAMPLE_CHUNK = 10_000

_FLAG_NAMES = (
    (2, "not_involution"),
    (4, "sign_not_reversed"),
    (8, "inv_changed"),
    (16, "fixed_point_mismatch"),
    (32, "bad_image"),
    (64, "bad_input"),
    (128, "case_not_paired"),
)


def _flag_names(flags: int) -> list[str]:
    return [name for bit, name in _FLAG_NAMES if flags & bit]


def _tree_violation(code: Sequence[int], flags: int) -> dict:
    entry: dict = {"code": list(code), "failures": _flag_names(flags)}
    try:
        entry["tree"] = to_json(decode(code))
    except ValueError:
        pass
    return entry


def _merge(into: dict[int, int], part: dict[int, int]) -> None:
    for e, c in part.items():
        into[e] = into.get(e, 0) + c


def _kappa_partition(args) -> tuple[int, int, list, dict[int, int]]:
    """Audit every tree with one fixed shape."""
    n, k, index = args
    template = _preorder_template(gen_complete_shapes(2 * k + 1)[index])
    population = fixed = 0
    bad: list = []
    signed: dict[int, int] = {}
    for phi in gen_odd_set_compositions(2 * n + 1, 2 * k + 1):
        pop, fx, b, sg = kernels.audit_labelings(template, phi)
        population += pop
        fixed += fx
        bad.extend(b)
        _merge(signed, sg)
    return population, fixed, bad, signed


def _kappa_sample_chunk(args) -> tuple[int, int, list, dict[int, int]]:
    n, seed, chunk, count = args
    rng = random.Random(f"{seed}:{chunk}")
    return kernels.audit_codes([random_code(n, rng) for _ in range(count)])


def _pair_check(family: str, p: PermutationPair) -> tuple[bool, Optional[dict]]:
    """Apply one pair involution; returns (is_fixed, violation or None)."""
    _, involution, _, member = FAMILIES[family]
    stat = wt if family == "h" else pair_inv
    failures = []
    try:
        image = involution(p)
        back = involution(image)
    except PairDomainError as exc:
        return False, {"pair": p.to_json(), "failures": ["left_domain"], "detail": str(exc)}
    if back != p:
        failures.append("not_involution")
    if stat(image) != stat(p):
        failures.append("statistic_changed")
    fixed = image == p
    if not fixed and pair_sign(image) != -pair_sign(p):
        failures.append("sign_not_reversed")
    if fixed != _expected_fixed(family, p):
        failures.append("fixed_point_mismatch")
    if failures:
        return fixed, {"pair": p.to_json(), "image": image.to_json(), "failures": failures}
    return fixed, None


def _expected_fixed(family: str, p: PermutationPair) -> bool:
    if family == "f":
        return is_alternating(p.pi + p.sigma, DOWN_UP)
    if family == "g":
        return p.sigma[0] == p.n and is_increasing_word(p.pi)
    return False


def _expected_signed_sum(family: str, n: int) -> LaurentPoly:
    if family in ("kappa", "f"):
        return _sgn(n) * q_tangent(n, "recurrence")
    if family == "g":
        return _sgn(n) * hat_T(n, "recurrence")
    return ZERO


def _pair_audit(family: str, pairs: Iterable[PermutationPair], exhaustive: bool) -> tuple[int, int, list, dict[int, int]]:
    stat = wt if family == "h" else pair_inv
    population = fixed_points = 0
    violations: list = []
    signed: dict[int, int] = {}
    for p in pairs:
        population += 1
        fixed, bad = _pair_check(family, p)
        fixed_points += fixed
        if bad:
            violations.append(bad)
        if exhaustive:
            e = stat(p)
            signed[e] = signed.get(e, 0) + pair_sign(p)
    return population, fixed_points, violations, signed


def _pair_sample_chunk(args) -> tuple[int, int, list, dict[int, int]]:
    family, n, seed, chunk, count = args
    sampler = FAMILIES[family][2]
    rng = random.Random(f"{seed}:{chunk}")
    return _pair_audit(family, (sampler(n, rng) for _ in range(count)), exhaustive=False)


def _run(worker: Callable, tasks: list, jobs: int) -> Iterator:
    if jobs <= 1 or len(tasks) <= 1:
        return map(worker, tasks)
    pool = ProcessPoolExecutor(max_workers=jobs)
    try:
        return iter(list(pool.map(worker, tasks)))
    finally:
        pool.shutdown()


def audit(
    family: str,
    n: int,
    mode: str = "exhaustive",
    count: int = 0,
    seed: Optional[Union[int, str]] = None,
    jobs: int = 1,
    deep: bool = False,
) -> AuditReport:
    """Audit one involution on ``LB_{2n+1}`` (``kappa``) or a pair family (``f``, ``g``, ``h``).

    In ``sample`` mode ``count`` objects are drawn in fixed-size chunks, each
    seeded from ``(seed, chunk index)``, so the report does not depend on
    ``jobs``.
    """
    if family not in AUDIT_CUTOFFS:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(AUDIT_CUTOFFS)}")
    if n < 0 or (family == "h" and n < 1):
        raise ValueError(f"{family} is audited for n >= {1 if family == 'h' else 0}")
    start = time.perf_counter()
    if mode == "exhaustive":
        limit = (DEEP_CUTOFFS if deep else AUDIT_CUTOFFS)[family]
        if n > limit:
            hint = "" if deep else " (pass --deep to go further)"
            raise CutoffError(f"exhaustive {family} audit is limited to n <= {limit}{hint}")
        if family == "kappa":
            tasks = [(n, k, i) for k in range(n + 1) for i in range(catalan(k))]
            results = list(_run(_kappa_partition, tasks, jobs))
        else:
            results = [_pair_audit(family, FAMILIES[family][0](n), exhaustive=True)]
    elif mode == "sample":
        if seed is None:
            raise ValueError("sample mode needs an explicit seed")
        if count < 1:
            raise ValueError("sample mode needs a positive count")
        sizes = [min(SAMPLE_CHUNK, count - i) for i in range(0, count, SAMPLE_CHUNK)]
        if family == "kappa":
            tasks = [(n, seed, c, size) for c, size in enumerate(sizes)]
            results = list(_run(_kappa_sample_chunk, tasks, jobs))
        else:
            tasks = [(family, n, seed, c, size) for c, size in enumerate(sizes)]
            results = list(_run(_pair_sample_chunk, tasks, jobs))
    else:
        raise ValueError(f"mode must be 'exhaustive' or 'sample', not {mode!r}")

    population = sum(r[0] for r in results)
    fixed = sum(r[1] for r in results)
    violations: list = []
    signed: dict[int, int] = {}
    for r in results:
        if family == "kappa":
            violations.extend(_tree_violation(code, flags) for code, flags in r[2])
        else:
            violations.extend(r[2])
        _merge(signed, r[3])

    report = AuditReport(family, n, population, fixed, violations, mode, None if seed is None else str(seed))
    if mode == "exhaustive":
        report.signed_sum = LaurentPoly.from_terms(signed)
        expected = _expected_signed_sum(family, n)
        if report.signed_sum != expected:
            violations.append({"failures": ["signed_sum"], "got": str(report.signed_sum), "expected": str(expected)})
        if family in ("kappa", "f") and fixed != tangent_int(n):
            violations.append({"failures": ["fixed_count"], "got": fixed, "expected": tangent_int(n)})
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# serialization ------------------------------------------------------------------


def _value_json(v):
    if isinstance(v, LaurentPoly):
        return v.to_json()
    return v


def _value_text(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def _as_dict(report, timings: bool) -> dict:
    if isinstance(report, dict):
        return {k: _value_json(v) for k, v in report.items()}
    out = {}
    for f in fields(report):
        if f.name == "elapsed_ms" and not timings:
            continue
        out[f.name] = _value_json(getattr(report, f.name))
    return out


def _columns(record_type, timings: bool) -> list[str]:
    return [f.name for f in fields(record_type) if timings or f.name != "elapsed_ms"]


def report_emit(
    reports: Sequence,
    fmt: str = "json",
    out: Union[str, TextIO, None] = None,
    timings: bool = False,
    record_type: type = IdentityReport,
) -> None:
    """Write reports (dataclass reports or plain dicts) as json, csv or text.

    ``out`` is a path, an open text stream, or ``None`` for standard output.
    ``record_type`` only supplies the CSV header when ``reports`` is empty.
    """
    if fmt not in ("json", "csv", "text"):
        raise ValueError(f"unknown format {fmt!r}")
    rows = [_as_dict(r, timings) for r in reports]
    buf = io.StringIO()
    if fmt == "json":
        buf.write(json.dumps(rows, indent=2))
        buf.write("\n")
    elif fmt == "csv":
        if rows:
            columns = list(rows[0])
        else:
            columns = _columns(record_type, timings)
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_value_text(_text_form(row.get(c))) for c in columns])
    else:
        for row in rows:
            buf.write("  ".join(f"{k}={_value_text(_text_form(v))}" for k, v in row.items()))
            buf.write("\n")
    text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    elif isinstance(out, str):
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _text_form(v):
    # polynomials read better as their rendered text in flat formats
    if isinstance(v, dict) and "text" in v and "coeffs" in v:
        return v["text"]
    return v
