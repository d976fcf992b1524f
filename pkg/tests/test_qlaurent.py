from fractions import Fraction
from math import comb

import pytest

from catalan_tangent.qlaurent import (
    ONE,
    Q,
    ZERO,
    LaurentPoly,
    lp_add,
    lp_eval_at_one,
    lp_mul,
    neg_q_pochhammer,
    q_binomial,
    q_binomial_by_division,
    q_pochhammer,
)


def P(*coeffs, offset=0):
    return LaurentPoly(coeffs, offset)


def test_canonical_form_strips_zeros():
    p = LaurentPoly([0, 0, 1, 2, 0], offset=-1)
    assert p.offset == 1 and p.coeffs == (1, 2)
    assert LaurentPoly([0, 0]) == ZERO
    assert ZERO.coeffs == () and ZERO.offset == 0


def test_add_examples():
    assert lp_add(P(1, 1), LaurentPoly.monomial(0, -1)) == Q
    p = P(3, 0, 5, offset=-2)
    assert lp_add(ZERO, p) == p
    s = LaurentPoly.monomial(-1) + Q
    assert (s.offset, s.coeffs) == (-1, (1, 0, 1))


def test_mul_examples():
    assert lp_mul(P(1, 1), P(1, 0, 1)) == P(1, 1, 1, 1)
    assert lp_mul(P(4, 5), ZERO) == ZERO
    assert LaurentPoly.monomial(-1) * Q == ONE


def test_int_coercion_and_equality():
    assert P(3) == 3 and 3 == P(3)
    assert 2 * Q == P(0, 2) and Q * 2 == Q + Q
    assert 1 - Q == P(1, -1)
    assert hash(P(7)) == hash(7)
    assert {P(7): "x"}[7] == "x"


def test_pow_and_shift():
    assert (1 + Q) ** 3 == P(1, 3, 3, 1)
    assert Q ** -2 == LaurentPoly.monomial(-2)
    assert P(1, 1).shift(-3) == P(1, 1, offset=-3)
    with pytest.raises(ValueError):
        (1 + Q) ** -1


def test_exact_division():
    a, b = P(1, 2, 1), P(1, 1)
    assert a.divmod_exact(b) == b
    with pytest.raises(ValueError):
        P(1, 0, 1).divmod_exact(b)
    with pytest.raises(ZeroDivisionError):
        a.divmod_exact(ZERO)


def test_evaluation():
    assert lp_eval_at_one(P(1, 1, 1)) == 3
    assert lp_eval_at_one(P(0, 1, 1)) == 2
    assert lp_eval_at_one(ZERO) == 0
    assert LaurentPoly.monomial(-1)(Fraction(1, 2)) == 2
    assert P(1, 1)(2) == 3


def test_text_rendering():
    assert str(ZERO) == "0"
    assert str(P(1, 1, 0, -2)) == "1*q^0 + 1*q^1 - 2*q^3"
    assert str(LaurentPoly.monomial(-1)) == "1*q^-1"
    assert P(2, offset=1).to_json() == {"offset": 1, "coeffs": [2], "text": "2*q^1"}


def test_pochhammers():
    assert neg_q_pochhammer(0) == ONE
    assert neg_q_pochhammer(2) == P(1, 1, 1, 1)
    assert neg_q_pochhammer(3).eval_at_one() == 8
    assert q_pochhammer(2) == P(1, -1, -1, 1)


def test_q_binomial_examples():
    assert q_binomial(3, 2) == P(1, 1, 1)
    assert all(q_binomial(n, 0) == ONE for n in range(6))
    assert q_binomial(5, 2).eval_at_one() == 10
    assert q_binomial(4, 5) == ZERO and q_binomial(4, -1) == ZERO


@pytest.mark.parametrize("n", range(11))
def test_q_binomial_two_paths(n):
    for k in range(n + 1):
        b = q_binomial(n, k)
        assert b == q_binomial_by_division(n, k)
        assert b.eval_at_one() == comb(n, k)
        assert b == q_binomial(n, n - k)
