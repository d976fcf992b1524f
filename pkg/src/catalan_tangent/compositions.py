"""Set compositions of ``[n]`` with odd blocks, and their counts O(n, k)."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import accumulate, combinations
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "SetComposition",
    "validate_set_composition",
    "odd_compositions_of_int",
    "gen_odd_set_compositions",
    "count_O",
    "count_O_multinomial",
    "random_odd_set_composition",
]

SetComposition = tuple[tuple[int, ...], ...]


def validate_set_composition(phi: Sequence[Sequence[int]], n: int) -> None:
    """Raise ``ValueError`` unless ``phi`` is a set composition of ``[n]``."""
    seen: set[int] = set()
    for block in phi:
        if not block:
            raise ValueError("empty block")
        for x in block:
            if x in seen:
                raise ValueError(f"letter {x} appears twice")
            seen.add(x)
    if seen != set(range(1, n + 1)):
        raise ValueError(f"blocks do not cover [{n}]")


def odd_compositions_of_int(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``k`` odd positive integers summing to ``n``."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - (k - 1) + 1, 2):
        for rest in odd_compositions_of_int(n - first, k - 1):
            yield (first,) + rest


def count_O_multinomial(n: int, k: int) -> int:
    """O(n, k) as a literal sum of multinomials n!/(c1!...ck!)."""
    total = 0
    for parts in odd_compositions_of_int(n, k):
        term = factorial(n)
        for c in parts:
            term //= factorial(c)
        total += term
    return total


@lru_cache(maxsize=None)
def count_O(n: int, k: int) -> int:
    """Number of set compositions of ``[n]`` into ``k`` blocks of odd size.

    Same multinomial sum as :func:`count_O_multinomial`, grouped by the
    size of the first block so it stays fast for large ``n``.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k == 0:
        return 1 if n == 0 else 0
    if n < k or (n - k) % 2:
        return 0
    return sum(comb(n, c) * count_O(n - c, k - 1) for c in range(1, n - k + 2, 2))


def _gen(remaining: tuple[int, ...], k: int) -> Iterator[SetComposition]:
    r = len(remaining)
    if k == 0:
        if r == 0:
            yield ()
        return
    if r < k or (r - k) % 2:
        return
    if k == 1:
        yield (remaining,)
        return
    firsts = []
    for size in range(1, r - k + 2, 2):
        firsts.extend(combinations(remaining, size))
    firsts.sort()
    for block in firsts:
        chosen = set(block)
        rest = tuple(x for x in remaining if x not in chosen)
        for tail in _gen(rest, k - 1):
            yield (block,) + tail


def gen_odd_set_compositions(n: int, k: int) -> Iterator[SetComposition]:
    """Odd set compositions of ``[n]`` with ``k`` blocks, lexicographic order.

    Blocks are sorted tuples; compositions come out ordered by their block
    sequence.  Nothing is produced when ``n`` and ``k`` differ in parity.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    return _gen(tuple(range(1, n + 1)), k)


@lru_cache(maxsize=None)
def _first_block_weights(left: int, blocks: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    options = tuple(range(1, left - blocks + 2, 2))
    weights = [comb(left, c) * count_O(left - c, blocks - 1) for c in options]
    return options, tuple(accumulate(weights))


def random_odd_set_composition(n: int, k: int, rng: random.Random) -> SetComposition:
    """Uniform sample from the odd set compositions of ``[n]`` with ``k`` blocks."""
    if count_O(n, k) == 0:
        raise ValueError(f"no odd set compositions of [{n}] into {k} blocks")
    sizes = []
    left, blocks = n, k
    while blocks:
        options, cum = _first_block_weights(left, blocks)
        c = rng.choices(options, cum_weights=cum)[0]
        sizes.append(c)
        left -= c
        blocks -= 1
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    out, pos = [], 0
    for c in sizes:
        out.append(tuple(sorted(perm[pos : pos + c])))
        pos += c
    return tuple(out)
