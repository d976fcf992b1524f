"""Exact Laurent polynomials in one variable ``q`` with integer coefficients.

A :class:`LaurentPoly` is stored as ``(offset, coeffs)`` where ``coeffs[i]``
is the coefficient of ``q**(offset + i)``.  The representation is kept
canonical (no leading or trailing zeros, the zero polynomial has no
coefficients) so that equality is plain tuple equality.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Union

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "Q",
    "lp_add",
    "lp_mul",
    "lp_eval_at_one",
    "neg_q_pochhammer",
    "q_pochhammer",
    "q_binomial",
    "q_binomial_by_division",
]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    __slots__ = ("_offset", "_coeffs")

    def __init__(self, coeffs: Iterable[int] = (), offset: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self._offset = 0
            self._coeffs: tuple[int, ...] = ()
        else:
            self._offset = offset + lo
            self._coeffs = tuple(cs[lo:hi])

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls((coeff,), exponent)

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> "LaurentPoly":
        """Build from an ``{exponent: coefficient}`` mapping."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls((terms.get(e, 0) for e in range(lo, hi + 1)), lo)

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def min_degree(self) -> int | None:
        return self._offset if self._coeffs else None

    @property
    def max_degree(self) -> int | None:
        return self._offset + len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs by increasing exponent."""
        return [(self._offset + i, c) for i, c in enumerate(self._coeffs) if c]

    def coeff(self, exponent: int) -> int:
        i = exponent - self._offset
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        lo = min(self._offset, other._offset)
        hi = max(self._offset + len(self._coeffs), other._offset + len(other._coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self._coeffs):
            out[self._offset - lo + i] += c
        for i, c in enumerate(other._coeffs):
            out[other._offset - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((-c for c in self._coeffs), self._offset)

    def __pos__(self) -> "LaurentPoly":
        return self

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(out, self._offset + other._offset)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            # only monomials are invertible
            if len(self._coeffs) != 1 or self._coeffs[0] not in (1, -1):
                raise ValueError("negative power of a non-unit Laurent polynomial")
            return LaurentPoly((self._coeffs[0] ** -exponent,), self._offset * exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        if not self._coeffs:
            return self
        return LaurentPoly(self._coeffs, self._offset + k)

    def divmod_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / divisor``; raises if there is a remainder.

        Long division from the top degree.  The divisor's leading coefficient
        must divide every intermediate leading coefficient.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        rem = list(self._coeffs)
        d = divisor._coeffs
        qlen = len(rem) - len(d) + 1
        if qlen <= 0:
            raise ValueError("inexact division")
        quot = [0] * qlen
        lead = d[-1]
        for i in range(qlen - 1, -1, -1):
            c = rem[i + len(d) - 1]
            if c % lead:
                raise ValueError("inexact division")
            c //= lead
            quot[i] = c
            if c:
                for j, y in enumerate(d):
                    rem[i + j] -= c * y
        if any(rem):
            raise ValueError("inexact division")
        return LaurentPoly(quot, self._offset - divisor._offset)

    # evaluation -----------------------------------------------------------

    def eval_at_one(self) -> int:
        return sum(self._coeffs)

    def __call__(self, x):
        """Evaluate at ``x`` (use a ``Fraction`` for exact negative powers)."""
        total = 0
        for e, c in self.terms():
            total += c * x**e
        return total

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly((other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._offset == other._offset and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        # agree with int hashing for constants, since they compare equal
        if not self._coeffs:
            return hash(0)
        if self._offset == 0 and len(self._coeffs) == 1:
            return hash(self._coeffs[0])
        return hash((self._offset, self._coeffs))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # rendering ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({list(self._coeffs)!r}, offset={self._offset})"

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(terms):
            if idx == 0:
                parts.append(f"{c}*q^{e}")
            elif c < 0:
                parts.append(f" - {-c}*q^{e}")
            else:
                parts.append(f" + {c}*q^{e}")
        return "".join(parts)

    def to_json(self) -> dict:
        return {"offset": self._offset, "coeffs": list(self._coeffs), "text": str(self)}


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly((x,))
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly((1,))
Q = LaurentPoly((1,), 1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval_at_one(a: LaurentPoly) -> int:
    return a.eval_at_one()


@lru_cache(maxsize=None)
def neg_q_pochhammer(n: int) -> LaurentPoly:
    """``(-q; q)_n = (1+q)(1+q^2)...(1+q^n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    return neg_q_pochhammer(n - 1) * LaurentPoly.from_terms({0: 1, n: 1})


@lru_cache(maxsize=None)
def q_pochhammer(n: int) -> LaurentPoly:
    """``(q; q)_n = (1-q)(1-q^2)...(1-q^n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    return q_pochhammer(n - 1) * LaurentPoly.from_terms({0: 1, n: -1})


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial coefficient via ``[n,k] = [n-1,k-1] + q^k [n-1,k]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


def q_binomial_by_division(n: int, k: int) -> LaurentPoly:
    """Cross-check path: ``(q;q)_n / ((q;q)_{n-k} (q;q)_k)``."""
    if k < 0 or k > n:
        return ZERO
    return q_pochhammer(n).divmod_exact(q_pochhammer(n - k) * q_pochhammer(k))
