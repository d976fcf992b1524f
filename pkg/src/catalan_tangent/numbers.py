"""Catalan, tangent and secant numbers and their q-analogs.

Integer tangent/secant numbers come from the boustrophedon (Seidel-Entringer)
triangle, which never touches a permutation.  The q-analogs have two
independent paths:

``enumerate``
    sum ``q**inv(w)`` over alternating permutations.

``recurrence``
    coefficient extraction from ``sin_q = tan_q * cos_q`` and
    ``sec_q * cos_q = 1``.  Comparing coefficients of ``x**(2n+1)`` in the
    first and multiplying through by ``(q;q)_{2n+1}`` gives::

        sum_{j=0}^{n} (-1)^(n-j) [2n+1, 2j+1] T_{2j+1}(q) = (-1)^n

    and the coefficient of ``x**(2n)`` in the second, times ``(q;q)_{2n}``::

        sum_{j=0}^{n} (-1)^(n-j) [2n, 2j] S_{2j}(q) = [n == 0]

    Each is solved for its top term, so only q-binomials and integer
    arithmetic are involved.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .qlaurent import ONE, ZERO, LaurentPoly, q_binomial
from .words import DOWN_UP, UP_DOWN, des_odd, gen_alternating, inv_count

__all__ = [
    "catalan",
    "zigzag_numbers",
    "tangent_int",
    "secant_int",
    "q_tangent",
    "q_secant",
    "q_secant_odd",
    "tilde_T",
    "hat_T",
    "inversion_polynomial",
    "METHODS",
]

METHODS = ("recurrence", "enumerate")


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def zigzag_numbers(m: int) -> tuple[int, ...]:
    """Euler zigzag numbers ``E_0..E_m`` by the boustrophedon triangle."""
    row = [1]
    out = [1]
    for i in range(1, m + 1):
        new = [0]
        for k in range(1, i + 1):
            new.append(new[-1] + row[i - k])
        row = new
        out.append(row[-1])
    return tuple(out)


def tangent_int(n: int) -> int:
    """``T_{2n+1}``."""
    return zigzag_numbers(2 * n + 1)[2 * n + 1]


def secant_int(n: int) -> int:
    """``S_{2n}``."""
    return zigzag_numbers(2 * n)[2 * n]


def inversion_polynomial(words) -> LaurentPoly:
    """``sum q**inv(w)`` over an iterable of words."""
    counts: dict[int, int] = {}
    for w in words:
        e = inv_count(w)
        counts[e] = counts.get(e, 0) + 1
    return LaurentPoly.from_terms(counts)


def _check(n: int, method: str) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@lru_cache(maxsize=None)
def q_tangent(n: int, method: str = "recurrence") -> LaurentPoly:
    """``T_{2n+1}(q)``, the inversion polynomial of down-up permutations of ``[2n+1]``."""
    _check(n, method)
    if method == "enumerate":
        return inversion_polynomial(gen_alternating(2 * n + 1, DOWN_UP))
    acc = LaurentPoly((-1 if n % 2 else 1,))
    for j in range(n):
        sign = -1 if (n - j) % 2 else 1
        acc = acc - sign * q_binomial(2 * n + 1, 2 * j + 1) * q_tangent(j)
    return acc


@lru_cache(maxsize=None)
def q_secant(n: int, method: str = "recurrence") -> LaurentPoly:
    """``S_{2n}(q)``, the inversion polynomial of up-down permutations of ``[2n]``."""
    _check(n, method)
    if method == "enumerate":
        return inversion_polynomial(gen_alternating(2 * n, UP_DOWN))
    if n == 0:
        return ONE
    acc = ZERO
    for j in range(n):
        sign = -1 if (n - j) % 2 else 1
        acc = acc - sign * q_binomial(2 * n, 2 * j) * q_secant(j)
    return acc


@lru_cache(maxsize=None)
def q_secant_odd(n: int) -> LaurentPoly:
    """``S^o_{2n}(q) = sum q**(inv + des_odd)`` over up-down permutations of ``[2n]``.

    ``S^o_0(q)`` is ``q**-1`` by convention.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return LaurentPoly.monomial(-1)
    counts: dict[int, int] = {}
    for w in gen_alternating(2 * n, UP_DOWN):
        e = inv_count(w) + des_odd(w)
        counts[e] = counts.get(e, 0) + 1
    return LaurentPoly.from_terms(counts)


@lru_cache(maxsize=None)
def tilde_T(k: int, method: str = "recurrence") -> LaurentPoly:
    """``sum_i [2k, 2i+1] T_{2i+1}(q) T_{2k-2i-1}(q)``, and 1 for ``k = 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return ONE
    acc = ZERO
    for i in range(k):
        acc = acc + q_binomial(2 * k, 2 * i + 1) * q_tangent(i, method) * q_tangent(k - 1 - i, method)
    return acc


@lru_cache(maxsize=None)
def hat_T(n: int, method: str = "recurrence") -> LaurentPoly:
    """``hat T_{2n+1}(q)`` from ``(-1)^n hat T = sum_k (-1)^k [2n+1, 2k] q^(2k) S_{2k}(q)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = ZERO
    for k in range(n + 1):
        term = q_binomial(2 * n + 1, 2 * k) * q_secant(k, method).shift(2 * k)
        acc = acc - term if k % 2 else acc + term
    return -acc if n % 2 else acc
