import random
from itertools import permutations

import pytest

from catalan_tangent.numbers import secant_int, tangent_int
from catalan_tangent.words import (
    DOWN_UP,
    UP_DOWN,
    compressed_up_down,
    count_alternating_by_first,
    des_odd,
    gen_alternating,
    gen_alternating_on,
    gen_unimodal,
    inv_count,
    is_alternating,
    is_compressed_up_down,
    is_unimodal,
    random_alternating,
    random_unimodal,
)


def w(s):
    return tuple(int(c) for c in s)


def test_inv_count():
    assert inv_count(w("467381952")) == 19
    assert inv_count(w("123456")) == 0
    assert inv_count(w("321")) == 3
    assert inv_count(()) == 0


def test_unimodal():
    assert is_unimodal(w("3576421"))
    assert all(is_unimodal(w(s)) for s in ("123", "132", "231", "321"))
    assert not is_unimodal(w("25718"))
    assert not is_unimodal(w("213"))
    with pytest.raises(ValueError):
        is_unimodal(())


def test_alternating():
    assert is_alternating(w("213"), DOWN_UP)
    assert is_alternating(w("12"), UP_DOWN)
    assert not is_alternating(w("123"), DOWN_UP)
    assert is_alternating((), UP_DOWN) and is_alternating((5,), DOWN_UP)


def test_des_odd():
    assert des_odd(w("21")) == 0
    assert des_odd(w("2143")) == 0
    assert des_odd(w("3142")) == 0
    assert des_odd(w("4132")) == 1


def test_compressed_up_down():
    assert is_compressed_up_down(())
    assert is_compressed_up_down(w("12"))
    assert is_compressed_up_down(w("1423"))
    assert not is_compressed_up_down(w("1234"))
    for m in range(0, 9, 2):
        s = compressed_up_down(range(1, m + 1))
        assert is_compressed_up_down(s)
        # the inversion number of a compressed up-down word of length 2l is l^2 - l
        assert inv_count(s) == (m // 2) ** 2 - m // 2
    hits = [p for p in permutations(range(1, 7)) if is_compressed_up_down(p)]
    assert hits == [compressed_up_down(range(1, 7))]


def test_gen_unimodal():
    assert set(gen_unimodal([2, 5, 9])) == {w("259"), w("295"), w("592"), w("952")}
    assert gen_unimodal([7]) == [(7,)]
    assert len(gen_unimodal(range(1, 6))) == 16
    for m in range(1, 7):
        brute = sorted(p for p in permutations(range(1, m + 1)) if is_unimodal(p))
        assert gen_unimodal(range(1, m + 1)) == brute


def test_gen_alternating_examples():
    assert list(gen_alternating(3, DOWN_UP)) == [w("213"), w("312")]
    assert len(list(gen_alternating(5, DOWN_UP))) == 16
    assert len(list(gen_alternating(4, UP_DOWN))) == 5


@pytest.mark.parametrize("m", range(0, 8))
def test_gen_alternating_against_filter(m):
    for mode in (DOWN_UP, UP_DOWN):
        brute = [p for p in permutations(range(1, m + 1)) if is_alternating(p, mode)]
        assert list(gen_alternating(m, mode)) == brute


def test_alternating_counts_match_zigzag():
    for n in range(5):
        assert len(list(gen_alternating(2 * n + 1, DOWN_UP))) == tangent_int(n)
        assert len(list(gen_alternating(2 * n, UP_DOWN))) == secant_int(n)


def test_gen_alternating_on_arbitrary_letters():
    out = list(gen_alternating_on([10, 3, 7], UP_DOWN))
    assert out == [(3, 10, 7), (7, 10, 3)]


def test_count_by_first_letter():
    for m in range(1, 8):
        for mode in (DOWN_UP, UP_DOWN):
            words = list(gen_alternating(m, mode))
            for j in range(1, m + 1):
                assert count_alternating_by_first(m, j, mode) == sum(1 for x in words if x[0] == j)


def test_random_alternating_is_uniform():
    rng = random.Random(5)
    letters = [2, 4, 5, 8, 9]
    support = list(gen_alternating_on(letters, DOWN_UP))
    seen = {}
    for _ in range(16000):
        x = random_alternating(letters, DOWN_UP, rng)
        assert is_alternating(x, DOWN_UP)
        seen[x] = seen.get(x, 0) + 1
    assert set(seen) == set(support)
    # 16 outcomes, 1000 expected each
    assert max(seen.values()) < 1150 and min(seen.values()) > 850


def test_random_unimodal():
    rng = random.Random(1)
    seen = {random_unimodal([1, 3, 6], rng) for _ in range(200)}
    assert seen == set(gen_unimodal([1, 3, 6]))
