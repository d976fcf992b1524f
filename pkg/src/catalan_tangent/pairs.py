"""Permutation pairs and the involutions f, g, h on them.

A permutation pair ``(pi, sigma)`` on ``[N]`` is two words whose
concatenation is a permutation of ``[N]``.  Its sign is
``(-1)**(len(sigma)//2)`` and its inversion number is that of ``pi + sigma``.

Families (indexed by ``n``):

``IP(n)``  on ``[2n+1]``: pi increasing, sigma up-down of even length.
``UP(n)``  on ``[2n+2]``: pi unimodal, sigma down-up of odd length containing ``2n+2``.
``CP(n)``  on ``[2n]``:   pi up-down of even length, sigma compressed up-down.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterator

from .numbers import secant_int, tangent_int
from .words import (
    DOWN_UP,
    UP_DOWN,
    Word,
    compressed_up_down,
    des_odd,
    gen_alternating_on,
    gen_unimodal,
    inv_count,
    is_alternating,
    is_compressed_up_down,
    is_increasing_word,
    is_unimodal,
    random_alternating,
    random_unimodal,
)

__all__ = [
    "PermutationPair",
    "PairDomainError",
    "pair_sign",
    "pair_inv",
    "wt",
    "in_IP",
    "in_UP",
    "in_CP",
    "gen_IP",
    "gen_UP",
    "gen_CP",
    "random_IP",
    "random_UP",
    "random_CP",
    "f_involution",
    "g_involution",
    "h_involution",
    "f_branch",
    "g_branch",
    "h_branch",
    "FAMILIES",
]


class PairDomainError(ValueError):
    """A pair is outside the family an involution is defined on."""


@dataclass(frozen=True)
class PermutationPair:
    pi: Word
    sigma: Word
    n: int  # ground-set size

    def __post_init__(self) -> None:
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if sorted(self.pi + self.sigma) != list(range(1, self.n + 1)):
            raise ValueError(f"{self.pi}|{self.sigma} is not a permutation of [{self.n}]")

    @classmethod
    def of(cls, pi, sigma) -> "PermutationPair":
        return cls(tuple(pi), tuple(sigma), len(pi) + len(sigma))

    def to_json(self) -> dict:
        return {"pi": list(self.pi), "sigma": list(self.sigma)}

    def __str__(self) -> str:
        def show(w):
            if not w:
                return "()"
            return "".join(map(str, w)) if max(w) < 10 else "-".join(map(str, w))

        return f"({show(self.pi)}, {show(self.sigma)})"


def pair_sign(p: PermutationPair) -> int:
    return -1 if (len(p.sigma) // 2) % 2 else 1


def pair_inv(p: PermutationPair) -> int:
    return inv_count(p.pi + p.sigma)


def wt(p: PermutationPair) -> int:
    """Weight on ``CP``: inv + des_odd(pi) - [pi empty] + len(sigma)/2."""
    return pair_inv(p) + des_odd(p.pi) - (1 if not p.pi else 0) + len(p.sigma) // 2


# membership ---------------------------------------------------------------------


def in_IP(p: PermutationPair) -> bool:
    return (
        p.n % 2 == 1
        and is_increasing_word(p.pi)
        and len(p.sigma) % 2 == 0
        and is_alternating(p.sigma, UP_DOWN)
    )


def in_UP(p: PermutationPair) -> bool:
    return (
        p.n % 2 == 0
        and p.n >= 2
        and len(p.pi) > 0
        and is_unimodal(p.pi)
        and len(p.sigma) % 2 == 1
        and p.n in p.sigma
        and is_alternating(p.sigma, DOWN_UP)
    )


def in_CP(p: PermutationPair) -> bool:
    return (
        p.n % 2 == 0
        and len(p.pi) % 2 == 0
        and is_alternating(p.pi, UP_DOWN)
        and is_compressed_up_down(p.sigma)
    )


# generation ---------------------------------------------------------------------


def gen_IP(n: int) -> Iterator[PermutationPair]:
    """All of ``IP_{2n+1}``, by increasing ``len(sigma)``."""
    N = 2 * n + 1
    ground = range(1, N + 1)
    for k in range(n + 1):
        for chosen in combinations(ground, 2 * k):
            rest = tuple(x for x in ground if x not in chosen)
            for sigma in gen_alternating_on(chosen, UP_DOWN):
                yield PermutationPair(rest, sigma, N)


def gen_UP(n: int) -> Iterator[PermutationPair]:
    """All of ``UP_{2n+2}``, by increasing ``len(sigma)``."""
    N = 2 * n + 2
    others = range(1, N)
    for size in range(1, N, 2):
        for chosen in combinations(others, size - 1):
            sigma_letters = chosen + (N,)
            rest = tuple(x for x in others if x not in chosen)
            for sigma in gen_alternating_on(sigma_letters, DOWN_UP):
                for pi in gen_unimodal(rest):
                    yield PermutationPair(pi, sigma, N)


def gen_CP(n: int) -> Iterator[PermutationPair]:
    """All of ``CP_{2n}``, by increasing ``len(pi)``."""
    N = 2 * n
    ground = range(1, N + 1)
    for k in range(n + 1):
        for chosen in combinations(ground, 2 * k):
            rest = tuple(x for x in ground if x not in chosen)
            sigma = compressed_up_down(rest)
            for pi in gen_alternating_on(chosen, UP_DOWN):
                yield PermutationPair(pi, sigma, N)


def random_IP(n: int, rng: random.Random) -> PermutationPair:
    N = 2 * n + 1
    weights = [comb(N, 2 * k) * secant_int(k) for k in range(n + 1)]
    k = rng.choices(range(n + 1), weights=weights)[0]
    chosen = sorted(rng.sample(range(1, N + 1), 2 * k))
    rest = tuple(x for x in range(1, N + 1) if x not in chosen)
    return PermutationPair(rest, random_alternating(chosen, UP_DOWN, rng), N)


def random_UP(n: int, rng: random.Random) -> PermutationPair:
    N = 2 * n + 2
    sizes = list(range(1, N, 2))
    # choose len(sigma)-1 companions of N, a down-up order, a unimodal pi
    weights = [comb(N - 1, s - 1) * tangent_int((s - 1) // 2) * 2 ** (N - s - 1) for s in sizes]
    s = rng.choices(sizes, weights=weights)[0]
    chosen = rng.sample(range(1, N), s - 1) + [N]
    rest = [x for x in range(1, N) if x not in chosen]
    return PermutationPair(random_unimodal(rest, rng), random_alternating(chosen, DOWN_UP, rng), N)


def random_CP(n: int, rng: random.Random) -> PermutationPair:
    N = 2 * n
    weights = [comb(N, 2 * k) * secant_int(k) for k in range(n + 1)]
    k = rng.choices(range(n + 1), weights=weights)[0]
    chosen = sorted(rng.sample(range(1, N + 1), 2 * k))
    rest = [x for x in range(1, N + 1) if x not in chosen]
    return PermutationPair(random_alternating(chosen, UP_DOWN, rng), compressed_up_down(rest), N)


# involutions --------------------------------------------------------------------


def f_branch(p: PermutationPair) -> str:
    """Which of f's three branches applies: ``append``, ``detach`` or ``fixed``."""
    pi, sigma = p.pi, p.sigma
    n = (p.n - 1) // 2
    k = len(sigma) // 2
    # with sigma empty, pi's last letter counts as above sigma_1
    if sigma and pi[-1] < sigma[0]:
        return "append"
    return "detach" if k < n else "fixed"


def f_involution(p: PermutationPair, check: bool = True) -> PermutationPair:
    if check and not in_IP(p):
        raise PairDomainError(f"{p} is not in IP")
    pi, sigma = p.pi, p.sigma
    branch = f_branch(p)
    if branch == "append":
        out = PermutationPair(pi + sigma[:2], sigma[2:], p.n)
    elif branch == "detach":
        out = PermutationPair(pi[:-2], pi[-2:] + sigma, p.n)
    else:
        out = p
    if check and not in_IP(out):
        raise PairDomainError(f"f{p} = {out} left IP")
    return out


def g_branch(p: PermutationPair) -> str:
    pi, sigma = p.pi, p.sigma
    top = p.n
    increasing = is_increasing_word(pi)
    if pi[-1] > sigma[0] or (sigma[0] != top and increasing):
        return "append"
    if len(pi) >= 2 and pi[-2] > pi[-1]:
        return "detach"
    if sigma[0] == top and increasing:
        return "fixed"
    raise PairDomainError(f"no branch of g applies to {p}")


def g_involution(p: PermutationPair, check: bool = True) -> PermutationPair:
    if check and not in_UP(p):
        raise PairDomainError(f"{p} is not in UP")
    pi, sigma = p.pi, p.sigma
    branch = g_branch(p)
    if branch == "append":
        out = PermutationPair(pi + sigma[:2], sigma[2:], p.n)
    elif branch == "detach":
        out = PermutationPair(pi[:-2], pi[-2:] + sigma, p.n)
    else:
        out = p
    if check and not in_UP(out):
        raise PairDomainError(f"g{p} = {out} left UP")
    return out


def h_branch(p: PermutationPair) -> str:
    """One of ``a-1``, ``a-2``, ``b-1``, ``b-2``."""
    pi, sigma = p.pi, p.sigma
    k = len(pi) // 2
    l = len(sigma) // 2
    if k == 0:
        return "a-1"
    last_odd, last_even = pi[2 * k - 2], pi[2 * k - 1]
    if l > 0 and last_odd > sigma[0]:
        return "a-1"
    # from here pi_{2k-1} < sigma_1, or sigma is empty
    if l == 0 or last_even > sigma[1]:
        if k == 1 or pi[2 * k - 4] > last_odd:
            return "a-2"
        return "b-1"
    return "b-2"


def h_involution(p: PermutationPair, check: bool = True) -> PermutationPair:
    if check and (not in_CP(p) or p.n < 2):
        raise PairDomainError(f"{p} is not in CP_{{2n}} with n >= 1")
    pi, sigma = list(p.pi), list(p.sigma)
    k = len(pi) // 2
    branch = h_branch(p)
    if branch == "a-1":
        out = PermutationPair(tuple(pi + sigma[:2]), tuple(sigma[2:]), p.n)
    elif branch == "a-2":
        out = PermutationPair(tuple(pi[:-2]), tuple(pi[-2:] + sigma), p.n)
    elif branch == "b-1":
        # the swap partner is searched among every letter after pi_{2k-2};
        # pi_{2k} must be included or (b-2) is not undone
        x = pi[2 * k - 3]
        y = max(c for c in pi[2 * k - 2 :] + sigma if c < x)
        _swap_letters(pi, sigma, x, y)
        out = PermutationPair(tuple(pi[:-2]), tuple(pi[-2:] + sigma), p.n)
    else:
        x = pi[2 * k - 1]
        y = min(s for s in sigma if s > x)
        _swap_letters(pi, sigma, x, y)
        out = PermutationPair(tuple(pi + sigma[:2]), tuple(sigma[2:]), p.n)
    if check and not in_CP(out):
        raise PairDomainError(f"h{p} = {out} left CP")
    return out


def _swap_letters(pi: list[int], sigma: list[int], x: int, y: int) -> None:
    for w in (pi, sigma):
        for i, c in enumerate(w):
            if c == x:
                w[i] = y
            elif c == y:
                w[i] = x


FAMILIES: dict[str, tuple[Callable, Callable, Callable, Callable]] = {
    # name: (generator, involution, sampler, membership)
    "f": (gen_IP, f_involution, random_IP, in_IP),
    "g": (gen_UP, g_involution, random_UP, in_UP),
    "h": (gen_CP, h_involution, random_CP, in_CP),
}
