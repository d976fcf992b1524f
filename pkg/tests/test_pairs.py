import random

import pytest

from catalan_tangent.numbers import hat_T, q_tangent
from catalan_tangent.pairs import (
    PairDomainError,
    PermutationPair,
    f_branch,
    f_involution,
    g_involution,
    gen_CP,
    gen_IP,
    gen_UP,
    h_branch,
    h_involution,
    in_CP,
    in_IP,
    in_UP,
    pair_inv,
    pair_sign,
    random_CP,
    random_IP,
    random_UP,
    wt,
)
from catalan_tangent.qlaurent import ZERO, LaurentPoly
from catalan_tangent.words import DOWN_UP, is_alternating, is_increasing_word


def pp(pi, sigma):
    return PermutationPair.of(tuple(int(c) for c in pi), tuple(int(c) for c in sigma))


def test_sign():
    assert pair_sign(pp("123", "")) == 1
    assert pair_sign(pp("1", "23")) == -1
    assert pair_sign(pp("", "123")) == -1
    assert pair_sign(pp("", "1234")) == 1
    assert pair_sign(pp("2571", "86493")) == 1


def test_inv():
    assert pair_inv(pp("", "257186493")) == pair_inv(pp("2571", "86493"))
    assert pair_inv(pp("12", "34")) == 0
    assert pair_inv(pp("21", "")) == 1


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        PermutationPair((1, 2), (2,), 3)


def test_family_sizes():
    assert len(list(gen_IP(1))) == 4
    assert [str(p) for p in gen_CP(1)] == ["((), 12)", "(12, ())"]
    assert all(p.sigma and p.n in p.sigma for p in gen_UP(2))
    for n in range(4):
        assert all(in_IP(p) for p in gen_IP(n))
        assert all(in_UP(p) for p in gen_UP(n))
        assert all(in_CP(p) for p in gen_CP(n))


def test_f_examples():
    assert f_involution(pp("123", "")) == pp("1", "23")
    assert f_branch(pp("3", "12")) == "fixed"
    assert f_involution(pp("3", "12")) == pp("3", "12")
    with pytest.raises(PairDomainError):
        f_involution(pp("21", "3"))


def test_g_smallest_case():
    (p,) = list(gen_UP(0))
    assert p == pp("1", "2")
    assert g_involution(p) == p and pair_sign(p) == 1


def test_wt_examples():
    assert wt(pp("", "12")) == 0
    assert wt(pp("12", "")) == 0


def test_h_smallest_case():
    a, b = pp("", "12"), pp("12", "")
    assert h_involution(a) == b and h_involution(b) == a
    assert pair_sign(a) == -pair_sign(b)


def test_h_swap_branches_shift_inv():
    for p in gen_CP(3):
        branch = h_branch(p)
        img = h_involution(p)
        if branch == "b-1":
            assert pair_inv(img) == pair_inv(p) - 1
        elif branch == "b-2":
            assert pair_inv(img) == pair_inv(p) + 1


def test_h_undoes_b2_where_the_literal_swap_pool_would_not():
    p = pp("1423", "")
    assert h_branch(p) == "b-1"
    img = h_involution(p)
    assert in_CP(img) and h_branch(img) == "b-2"
    assert h_involution(img) == p


def _signed(pairs, stat):
    terms = {}
    for p in pairs:
        terms[stat(p)] = terms.get(stat(p), 0) + pair_sign(p)
    return LaurentPoly.from_terms(terms)


@pytest.mark.parametrize("n", range(4))
def test_f_exhaustive(n):
    fixed = []
    for p in gen_IP(n):
        img = f_involution(p)
        assert f_involution(img) == p and pair_inv(img) == pair_inv(p)
        if img == p:
            fixed.append(p)
            assert is_alternating(p.pi + p.sigma, DOWN_UP)
        else:
            assert pair_sign(img) == -pair_sign(p)
    sign = -1 if n % 2 else 1
    assert _signed(fixed, pair_inv) == sign * q_tangent(n)
    assert _signed(gen_IP(n), pair_inv) == sign * q_tangent(n)


@pytest.mark.parametrize("n", range(4))
def test_g_exhaustive(n):
    fixed = []
    for p in gen_UP(n):
        img = g_involution(p)
        assert g_involution(img) == p and pair_inv(img) == pair_inv(p)
        if img == p:
            fixed.append(p)
            assert p.sigma[0] == p.n and is_increasing_word(p.pi)
        else:
            assert pair_sign(img) == -pair_sign(p)
            assert abs(len(img.sigma) - len(p.sigma)) == 2
    sign = -1 if n % 2 else 1
    assert _signed(fixed, pair_inv) == sign * hat_T(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_h_exhaustive(n):
    for p in gen_CP(n):
        img = h_involution(p)
        assert img != p
        assert h_involution(img) == p
        assert wt(img) == wt(p)
        assert pair_sign(img) == -pair_sign(p)
    assert _signed(gen_CP(n), wt) == ZERO


def test_samplers_land_in_their_families():
    rng = random.Random(9)
    for n in range(1, 6):
        for _ in range(50):
            assert in_IP(random_IP(n, rng))
            assert in_UP(random_UP(n, rng))
            assert in_CP(random_CP(n, rng))


@pytest.mark.parametrize("family", ["ip", "up", "cp"])
def test_samplers_are_uniform(family):
    gen, sample = {"ip": (gen_IP, random_IP), "up": (gen_UP, random_UP), "cp": (gen_CP, random_CP)}[family]
    n = 2
    support = list(gen(n))
    rng = random.Random(77)
    draws = 200 * len(support)
    counts = {}
    for _ in range(draws):
        p = sample(n, rng)
        counts[p] = counts.get(p, 0) + 1
    assert set(counts) == set(support)
    chi2 = sum((c - 200) ** 2 / 200 for c in counts.values())
    df = len(support) - 1
    assert chi2 < df + 6 * (2 * df) ** 0.5
