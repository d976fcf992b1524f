"""Words over distinct positive integers: statistics, shape tests, generators.

A word is a plain ``tuple[int, ...]`` of pairwise distinct letters.  Letters
need not be ``1..n``; every predicate here only looks at relative order.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ._backend import kernels

__all__ = [
    "Word",
    "DOWN_UP",
    "UP_DOWN",
    "inv_count",
    "is_increasing_word",
    "is_unimodal",
    "is_alternating",
    "des_odd",
    "is_compressed_up_down",
    "compressed_up_down",
    "gen_unimodal",
    "gen_alternating",
    "gen_alternating_on",
    "count_alternating_by_first",
    "random_alternating",
    "random_unimodal",
]

Word = tuple[int, ...]

DOWN_UP = "down_up"
UP_DOWN = "up_down"
_MODES = (DOWN_UP, UP_DOWN)


def _check_distinct(w: Sequence[int]) -> None:
    if len(set(w)) != len(w):
        raise ValueError(f"word has repeated letters: {tuple(w)}")


def inv_count(w: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``w[i] > w[j]``."""
    return kernels.inv_count(tuple(w))


def is_increasing_word(w: Sequence[int]) -> bool:
    return all(w[i] < w[i + 1] for i in range(len(w) - 1))


def is_unimodal(w: Sequence[int]) -> bool:
    """True iff ``w`` strictly rises to its maximum and then strictly falls."""
    if not w:
        raise ValueError("unimodality is undefined for the empty word")
    i, n = 0, len(w)
    while i + 1 < n and w[i] < w[i + 1]:
        i += 1
    while i + 1 < n and w[i] > w[i + 1]:
        i += 1
    return i == n - 1


def is_alternating(w: Sequence[int], mode: str) -> bool:
    """``down_up``: w1 > w2 < w3 > ...;  ``up_down``: w1 < w2 > w3 < ..."""
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    down = mode == DOWN_UP
    for i in range(len(w) - 1):
        if (w[i] > w[i + 1]) != down:
            return False
        down = not down
    return True


def des_odd(w: Sequence[int]) -> int:
    """Descents among the letters at odd (1-based) positions."""
    odd = w[::2]
    return sum(1 for i in range(len(odd) - 1) if odd[i] > odd[i + 1])


def is_compressed_up_down(w: Sequence[int]) -> bool:
    """w1 < w3 < ... < w_{2l-1} < w_{2l} < w_{2l-2} < ... < w_2."""
    if len(w) % 2:
        raise ValueError("compressed up-down words have even length")
    chain = list(w[::2]) + list(w[1::2])[::-1]
    return is_increasing_word(chain)


def compressed_up_down(letters: Iterable[int]) -> Word:
    """The unique compressed up-down arrangement of an even-size set."""
    s = sorted(letters)
    if len(s) % 2:
        raise ValueError("need an even number of letters")
    half = len(s) // 2
    low, high = s[:half], s[half:][::-1]
    out: list[int] = []
    for a, b in zip(low, high):
        out += (a, b)
    return tuple(out)


def gen_unimodal(letters: Iterable[int]) -> list[Word]:
    """All unimodal arrangements of ``letters`` (``2**(m-1)`` of them), sorted."""
    s = sorted(letters)
    if not s:
        raise ValueError("need at least one letter")
    _check_distinct(s)
    top, rest = s[-1], s[:-1]
    out = []
    for mask in range(1 << len(rest)):
        left = [x for i, x in enumerate(rest) if mask >> i & 1]
        right = [x for i, x in enumerate(rest) if not mask >> i & 1]
        out.append(tuple(left) + (top,) + tuple(reversed(right)))
    out.sort()
    return out


def _alternating_iter(letters: list[int], mode: str) -> Iterator[Word]:
    # letters sorted ascending, so the search emits words in lexicographic order
    n = len(letters)
    word: list[int] = []
    used = [False] * n

    def extend(need_up: bool) -> Iterator[Word]:
        if len(word) == n:
            yield tuple(word)
            return
        last = word[-1] if word else None
        for i, x in enumerate(letters):
            if used[i]:
                continue
            if last is not None and (x > last) != need_up:
                continue
            used[i] = True
            word.append(x)
            yield from extend(not need_up)
            word.pop()
            used[i] = False

    # the flag is flipped once the first letter is placed, so the second
    # letter must go up exactly for up-down words
    yield from extend(mode == DOWN_UP)


def gen_alternating_on(letters: Iterable[int], mode: str) -> Iterator[Word]:
    """Alternating arrangements of an arbitrary letter set, lexicographic."""
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    s = sorted(letters)
    _check_distinct(s)
    return _alternating_iter(s, mode)


def gen_alternating(n: int, mode: str) -> Iterator[Word]:
    """Alternating permutations of ``[n]`` in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return gen_alternating_on(range(1, n + 1), mode)


@lru_cache(maxsize=None)
def count_alternating_by_first(n: int, j: int, mode: str) -> int:
    """Number of alternating permutations of ``[n]`` whose first letter is ``j``."""
    if not 1 <= j <= n:
        return 0
    if n == 1:
        return 1
    if mode == DOWN_UP:
        # complementation swaps the two modes
        return count_alternating_by_first(n, n + 1 - j, UP_DOWN)
    # up-down: the standardized tail is down-up on [n-1] starting above j
    return sum(count_alternating_by_first(n - 1, r, DOWN_UP) for r in range(j, n))


def random_alternating(letters: Sequence[int], mode: str, rng: random.Random) -> Word:
    """Uniformly random alternating arrangement of ``letters``."""
    pool = sorted(letters)
    out: list[int] = []
    cur_mode = mode
    lo_rank = 1  # first letter's rank must be >= lo_rank (up step) ...
    hi_rank = len(pool)  # ... or <= hi_rank (down step)
    while pool:
        n = len(pool)
        weights = [
            count_alternating_by_first(n, j, cur_mode) if lo_rank <= j <= hi_rank else 0
            for j in range(1, n + 1)
        ]
        j = rng.choices(range(1, n + 1), weights=weights)[0] if n > 1 else 1
        out.append(pool.pop(j - 1))
        # the tail of an up-down word is down-up (and vice versa), ranked within the pool
        if cur_mode == UP_DOWN:
            lo_rank, hi_rank = j, n - 1
            cur_mode = DOWN_UP
        else:
            lo_rank, hi_rank = 1, j - 1
            cur_mode = UP_DOWN
    return tuple(out)


def random_unimodal(letters: Iterable[int], rng: random.Random) -> Word:
    """Uniformly random unimodal arrangement: each non-peak letter picks a side."""
    s = sorted(letters)
    if not s:
        raise ValueError("need at least one letter")
    top = s.pop()
    left, right = [], []
    for x in s:
        (left if rng.random() < 0.5 else right).append(x)
    return tuple(left) + (top,) + tuple(reversed(right))
