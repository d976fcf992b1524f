"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import pytest

from catalan_tangent.harness import audit, verify
from catalan_tangent.kappa import CASE_A1, CASE_A2, CASE_I, CASE_II, kappa_trace
from catalan_tangent.numbers import q_secant, q_tangent, secant_int, tangent_int, zigzag_numbers
from catalan_tangent.qlaurent import Q, LaurentPoly, neg_q_pochhammer
from catalan_tangent.trees import (
    count_labeled_trees,
    first_active_node,
    gen_labeled_trees,
    in_order,
    inv_tree,
    is_active,
    is_increasing,
    leaf,
    node,
    word_of,
)
from catalan_tangent.words import DOWN_UP, UP_DOWN, gen_alternating, gen_unimodal, inv_count

RESULTS: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
    RESULTS.append(line)
    print(line)


def check(criterion: str, detail: str, failures: list[str]) -> None:
    ok = not failures
    record(criterion, ok, detail if ok else f"{detail} -- {'; '.join(failures[:5])}")
    assert ok, failures


def timed(func):
    start = time.perf_counter()
    out = func()
    return out, time.perf_counter() - start


# 1 ------------------------------------------------------------------------------


def test_criterion_1_catalan_tangent():
    failures = []
    reports, secs = timed(lambda: [verify("cat_tan", n) for n in range(5)])
    failures += [f"n={r.n}: {r.lhs} != {r.rhs}" for r in reports if not r.equal]
    # the printed n=2 instance, term by term
    terms = [1 * 2**4 * 1, -60 * 2**2 * 1, 120 * 2**0 * 2]
    if terms != [16, -240, 240] or sum(terms) != 16 or reports[2].lhs != 16:
        failures.append(f"n=2 instance gives {terms}")
    if secs >= 1:
        failures.append(f"took {secs:.2f}s")
    check("1", f"cat_tan n=0..4 equal, n=2 is 16-240+240=16 ({secs * 1000:.0f} ms)", failures)


# 2 ------------------------------------------------------------------------------


def test_criterion_2_integer_identities():
    failures = []
    start = time.perf_counter()
    for iid, lo in (("genocchi", 1), ("tan2", 0), ("andrews_gessel", 0)):
        for n in range(lo, 9):
            r = verify(iid, n)
            if not r.equal:
                failures.append(f"{iid} n={n}: {r.lhs} != {r.rhs}")
    spots = {"genocchi": 32, "tan2": 16, "andrews_gessel": 16}
    for iid, want in spots.items():
        r = verify(iid, 2)
        if (r.lhs, r.rhs) != (want, want):
            failures.append(f"{iid} n=2 gives {r.lhs}, {r.rhs}")
    secs = time.perf_counter() - start
    if secs >= 1:
        failures.append(f"took {secs:.2f}s")
    check("2", f"genocchi n=1..8, tan2 and andrews_gessel n=0..8, spot values 32/16/16 ({secs * 1000:.0f} ms)", failures)


@pytest.mark.xfail(strict=True, reason="the genocchi sum is empty at n=0 (0 vs 2); kept as a recorded failure")
def test_criterion_2_genocchi_at_zero():
    r = verify("genocchi", 0)
    check("2", f"genocchi at n=0 (lhs {r.lhs}, rhs {r.rhs})", [] if r.equal else ["empty sum is 0, right side is 2"])


# 3 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_3_kappa_exhaustive():
    report, secs = timed(lambda: audit("kappa", 3, jobs=1))
    failures = []
    if report.population != 67600 or count_labeled_trees(3) != 67600:
        failures.append(f"population {report.population}")
    if report.fixed_points != 272:
        failures.append(f"fixed {report.fixed_points}")
    if report.violations:
        failures.append(f"{len(report.violations)} violations, first {report.violations[0]}")
    if report.signed_sum != -q_tangent(3):
        failures.append("signed q-sum differs from -T_7(q)")
    if secs >= 30:
        failures.append(f"took {secs:.1f}s")
    # the pure-Python backend must reach the same verdict inside the same budget
    env = dict(os.environ, CATALAN_TANGENT_PURE="1")
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "catalan_tangent", "audit", "--family", "kappa", "--n", "3", "--format", "json"],
        env=env, capture_output=True, text=True,
    )
    pure_secs = time.perf_counter() - start
    pure = json.loads(out.stdout)[0] if out.returncode == 0 else None
    if not pure or (pure["population"], pure["fixed_points"], pure["violations"]) != (67600, 272, []):
        failures.append(f"pure backend: exit {out.returncode} {out.stderr.strip()[:200]}")
    if pure_secs >= 30:
        failures.append(f"pure backend took {pure_secs:.1f}s")
    check(
        "3",
        f"LB_7: 67600 trees, 272 fixed, no violations "
        f"(compiled {secs:.2f}s, pure {pure_secs:.1f}s)",
        failures,
    )


# 4 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_4_kappa_sampled_and_deep():
    sampled, secs = timed(lambda: audit("kappa", 4, "sample", count=1_000_000, seed=20240601, jobs=os.cpu_count() or 1))
    failures = []
    if sampled.population != 1_000_000 or sampled.violations:
        failures.append(f"sample: {sampled.population} drawn, {len(sampled.violations)} violations")
    deep, deep_secs = timed(lambda: audit("kappa", 4, deep=True, jobs=os.cpu_count() or 1))
    if deep.population != count_labeled_trees(4) or deep.fixed_points != 7936 or deep.violations:
        failures.append(f"deep: {deep.population} trees, {deep.fixed_points} fixed, {len(deep.violations)} violations")
    check(
        "4",
        f"LB_9: 10^6 seeded samples clean ({secs:.0f}s); --deep all {deep.population} trees clean, "
        f"7936 fixed ({deep_secs:.0f}s)",
        failures,
    )


# 5 ------------------------------------------------------------------------------


def test_criterion_5_worked_examples(sample_trees_9, chain_case_pair):
    failures = []
    merge_tree = node((5, 7, 6, 4, 2), leaf(3), leaf(1))
    split_leaf = leaf(3, 5, 7, 6, 4, 2, 1)
    tr = kappa_trace(merge_tree)
    if (tr.case, tr.image) != (CASE_II, split_leaf):
        failures.append(f"merge example gave {tr.case} {tr.image}")
    tr = kappa_trace(split_leaf)
    if (tr.case, tr.image) != (CASE_I, merge_tree):
        failures.append(f"split example gave {tr.case} {tr.image}")
    before, after = chain_case_pair
    tr = kappa_trace(before)
    if (tr.case, tr.image) != (CASE_A1, after):
        failures.append(f"chain example (a-1) gave {tr.case} {tr.image}")
    tr = kappa_trace(after)
    if (tr.case, tr.image) != (CASE_A2, before):
        failures.append(f"chain example (a-2) gave {tr.case} {tr.image}")
    active = [[v.label for v in in_order(t) if is_active(v)] for t in sample_trees_9]
    if active != [[(9, 5, 2)], [(5, 7, 8)], [(4,), (5,)]]:
        failures.append(f"sample trees active nodes {active}")
    third = sample_trees_9[2]
    if in_order(third)[first_active_node(third)].label != (4,):
        failures.append("third sample tree: 4 is not the first active node")
    if word_of(sample_trees_9[0]) != (4, 6, 7, 3, 8, 1, 9, 5, 2):
        failures.append("first sample tree word")
    check("5", "merge/split (II)/(I), chain pair (a-1)/(a-2), active nodes 952, 578, {4,5} on the sample trees", failures)


# 6 ------------------------------------------------------------------------------


def test_criterion_6_q_identities():
    failures = []
    start = time.perf_counter()
    plan = (("q1", 4), ("q2", 3), ("q2_vanishing", 3), ("q_sec_tan", 4), ("huber_yee", 4))
    for iid, top in plan:
        first = 1 if iid == "huber_yee" else 0
        for n in range(first, top + 1):
            r = verify(iid, n)
            if not r.equal:
                failures.append(f"{iid} n={n}")
            if iid in ("q1", "q2") and r.lhs.eval_at_one() != verify("tan2", n).lhs:
                failures.append(f"{iid} n={n} at q=1 does not give the tangent identity")
    for n in range(5):
        if verify("q1", n).lhs.eval_at_one() != verify("cat_tan", n).rhs:
            failures.append(f"q1 n={n} at q=1 does not give (-1)^n T")
    one_q = 1 + Q
    printed = {
        1: one_q * Q,
        2: one_q**2 * (1 + Q**2) ** 2 * Q**2,
        3: one_q**2 * (1 + Q**2) * (1 + Q**3) * Q**3 * LaurentPoly([1, 1, 3, 2, 3, 2, 3, 1, 1]),
    }
    for n, poly in printed.items():
        if q_tangent(n, "enumerate") != poly or q_tangent(n, "recurrence") != poly:
            failures.append(f"T_{2 * n + 1}(q) differs from the printed factorization")
    secs = time.perf_counter() - start
    if secs >= 60:
        failures.append(f"took {secs:.1f}s")
    check("6", f"q1 n<=4, q2 + vanishing form n<=3, q_sec_tan n<=4, huber_yee n=1..4, T_3/T_5/T_7 printed ({secs:.1f}s)", failures)


# 7 ------------------------------------------------------------------------------


def test_criterion_7_pair_involutions():
    failures = []
    start = time.perf_counter()
    for family, top, lo in (("f", 3, 0), ("g", 3, 0), ("h", 4, 1)):
        for n in range(lo, top + 1):
            r = audit(family, n)
            if r.violations:
                failures.append(f"{family} n={n}: {r.violations[0]}")
            if family == "h" and r.fixed_points:
                failures.append(f"h n={n} has fixed points")
            if family == "f" and r.fixed_points != tangent_int(n):
                failures.append(f"f n={n}: {r.fixed_points} fixed")
    secs = time.perf_counter() - start
    if secs >= 60:
        failures.append(f"took {secs:.1f}s")
    check("7", f"f, g n<=3 and h n<=4: involutive, statistic kept, sign reversed, fixed sets as characterized ({secs:.1f}s)", failures)


# 8 ------------------------------------------------------------------------------


def test_criterion_8_oracle_coherence():
    failures = []
    for n in range(5):
        if q_tangent(n, "enumerate") != q_tangent(n, "recurrence"):
            failures.append(f"T(q) paths differ at n={n}")
        if q_secant(n, "enumerate") != q_secant(n, "recurrence"):
            failures.append(f"S(q) paths differ at n={n}")
    zig = zigzag_numbers(17)
    for n in range(9):
        counted_t = sum(1 for _ in gen_alternating(2 * n + 1, DOWN_UP)) if n <= 4 else None
        counted_s = sum(1 for _ in gen_alternating(2 * n, UP_DOWN)) if n <= 4 else None
        if tangent_int(n) != zig[2 * n + 1] or secant_int(n) != zig[2 * n]:
            failures.append(f"boustrophedon lookup n={n}")
        if counted_t is not None and (counted_t, counted_s) != (tangent_int(n), secant_int(n)):
            failures.append(f"enumeration vs boustrophedon n={n}")
        if q_tangent(min(n, 4)).eval_at_one() != tangent_int(min(n, 4)):
            failures.append(f"T(1) n={n}")
    # past enumeration range the recurrence path still has to land on the triangle
    for n in range(5, 9):
        if q_tangent(n).eval_at_one() != tangent_int(n) or q_secant(n).eval_at_one() != secant_int(n):
            failures.append(f"recurrence at q=1 vs boustrophedon n={n}")
    for m in range(1, 9):
        counts: dict[int, int] = {}
        for w in gen_unimodal(range(1, m + 1)):
            counts[inv_count(w)] = counts.get(inv_count(w), 0) + 1
        poly = LaurentPoly.from_terms(counts)
        if poly != neg_q_pochhammer(m - 1):
            failures.append(f"unimodal inversions m={m}")
    for n in range(4):
        ib = [t for t in gen_labeled_trees(n) if is_increasing(t)]
        words = [word_of(t) for t in ib]
        if sorted(words) != list(gen_alternating(2 * n + 1, DOWN_UP)) or len(set(words)) != len(words):
            failures.append(f"w(T) on IB is not a bijection at n={n}")
        if any(inv_tree(t) != inv_count(w) for t, w in zip(ib, words)):
            failures.append(f"w(T) changes inv at n={n}")
    check(
        "8",
        "T(q)/S(q) paths n<=4, T/S vs boustrophedon n<=8, unimodal inversions = (-q;q)_{m-1} m<=8, w: IB -> A bijective n<=3",
        failures,
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
