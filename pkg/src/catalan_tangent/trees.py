"""Complete binary trees whose nodes carry odd unimodal words.

A labeled binary tree on ``[2n+1]`` is a complete binary tree (every node
has zero or two children) whose node labels are odd-length unimodal words
and whose letters partition ``[2n+1]``.  Trees are immutable values; a node
is identified by its in-order index.

Unlabeled shapes are nested tuples: ``()`` is a single node and
``(left, right)`` an internal node.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate, product
from typing import Iterator, Optional, Sequence

from .compositions import SetComposition, count_O, gen_odd_set_compositions, random_odd_set_composition
from .numbers import catalan
from .words import Word, gen_unimodal, inv_count, is_unimodal, random_unimodal

__all__ = [
    "LabeledBinaryTree",
    "Shape",
    "leaf",
    "node",
    "validate_tree",
    "gen_complete_shapes",
    "shape_of",
    "fill_shape",
    "gen_labeled_trees",
    "count_labeled_trees",
    "in_order",
    "word_of",
    "inv_tree",
    "node_count",
    "half_edges",
    "is_increasing",
    "first_active_node",
    "is_active",
    "mirror",
    "encode",
    "decode",
    "iter_shape_compositions",
    "iter_codes",
    "random_labeled_tree",
    "random_code",
    "to_json",
    "from_json",
]

Shape = tuple


@dataclass(frozen=True, slots=True)
class LabeledBinaryTree:
    label: Word
    left: Optional["LabeledBinaryTree"] = None
    right: Optional["LabeledBinaryTree"] = None

    def __post_init__(self) -> None:
        if (self.left is None) != (self.right is None):
            raise ValueError("a complete binary tree node has zero or two children")
        if not isinstance(self.label, tuple):
            object.__setattr__(self, "label", tuple(self.label))
        if not self.label:
            raise ValueError("node labels must be nonempty")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __str__(self) -> str:
        text = "".join(map(str, self.label)) if max(self.label) < 10 else "-".join(map(str, self.label))
        if self.is_leaf:
            return text
        return f"{text}({self.left},{self.right})"


def leaf(*letters: int) -> LabeledBinaryTree:
    return LabeledBinaryTree(tuple(letters))


def node(label: Sequence[int], left: LabeledBinaryTree, right: LabeledBinaryTree) -> LabeledBinaryTree:
    return LabeledBinaryTree(tuple(label), left, right)


# validation -----------------------------------------------------------------


def validate_tree(t: LabeledBinaryTree, n: int | None = None) -> None:
    """Raise ``ValueError`` unless ``t`` is a labeled binary tree.

    With ``n`` given, the letters must be exactly ``[2n+1]``.
    """
    letters: list[int] = []
    for v in in_order(t):
        if len(v.label) % 2 == 0:
            raise ValueError(f"label {v.label} has even length")
        if not is_unimodal(v.label):
            raise ValueError(f"label {v.label} is not unimodal")
        letters.extend(v.label)
    if len(set(letters)) != len(letters):
        raise ValueError("letters repeat across labels")
    if n is not None and sorted(letters) != list(range(1, 2 * n + 2)):
        raise ValueError(f"letters do not form [{2 * n + 1}]")
    if n is None and sorted(letters) != list(range(1, len(letters) + 1)):
        raise ValueError("letters do not form an initial segment [m]")


# shapes ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _shapes_internal(k: int) -> tuple[Shape, ...]:
    if k == 0:
        return ((),)
    out = []
    for i in range(k):
        for left in _shapes_internal(i):
            for right in _shapes_internal(k - 1 - i):
                out.append((left, right))
    return tuple(out)


def gen_complete_shapes(m: int) -> tuple[Shape, ...]:
    """All complete binary tree shapes with ``m`` nodes (``m`` odd)."""
    if m < 1 or m % 2 == 0:
        raise ValueError("a complete binary tree has an odd number of nodes")
    return _shapes_internal((m - 1) // 2)


def shape_of(t: LabeledBinaryTree) -> Shape:
    if t.is_leaf:
        return ()
    return (shape_of(t.left), shape_of(t.right))


def fill_shape(shape: Shape, labels: Sequence[Word]) -> LabeledBinaryTree:
    """Put ``labels`` on the nodes of ``shape`` in in-order."""
    it = iter(labels)

    def build(s: Shape) -> LabeledBinaryTree:
        if not s:
            return LabeledBinaryTree(tuple(next(it)))
        left = build(s[0])
        lab = tuple(next(it))
        right = build(s[1])
        return LabeledBinaryTree(lab, left, right)

    t = build(shape)
    if next(it, None) is not None:
        raise ValueError("more labels than nodes")
    return t


# enumeration ----------------------------------------------------------------


def iter_shape_compositions(n: int) -> Iterator[tuple[Shape, SetComposition]]:
    """The (shape, odd set composition) pairs that index ``LB_{2n+1}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for k in range(n + 1):
        shapes = gen_complete_shapes(2 * k + 1)
        for shape in shapes:
            for phi in gen_odd_set_compositions(2 * n + 1, 2 * k + 1):
                yield shape, phi


def gen_labeled_trees(n: int) -> Iterator[LabeledBinaryTree]:
    """Every labeled binary tree on ``[2n+1]``.

    Ordered by node count, then shape, then block sequence, then the
    unimodal label chosen for each block.
    """
    for shape, phi in iter_shape_compositions(n):
        for labels in product(*(gen_unimodal(b) for b in phi)):
            yield fill_shape(shape, labels)


def count_labeled_trees(n: int) -> int:
    """``sum_k O(2n+1, 2k+1) 2^(2n-2k) C_k``."""
    return sum(count_O(2 * n + 1, 2 * k + 1) * 2 ** (2 * n - 2 * k) * catalan(k) for k in range(n + 1))


# statistics -----------------------------------------------------------------


def in_order(t: LabeledBinaryTree) -> list[LabeledBinaryTree]:
    out: list[LabeledBinaryTree] = []
    stack: list[LabeledBinaryTree] = []
    cur: Optional[LabeledBinaryTree] = t
    while stack or cur is not None:
        while cur is not None:
            stack.append(cur)
            cur = cur.left
        cur = stack.pop()
        out.append(cur)
        cur = cur.right
    return out


def word_of(t: LabeledBinaryTree) -> Word:
    """Concatenation of the labels in in-order."""
    out: list[int] = []
    for v in in_order(t):
        out.extend(v.label)
    return tuple(out)


def inv_tree(t: LabeledBinaryTree) -> int:
    return inv_count(word_of(t))


def node_count(t: LabeledBinaryTree) -> int:
    if t.is_leaf:
        return 1
    return node_count(t.left) + 1 + node_count(t.right)


def half_edges(t: LabeledBinaryTree) -> int:
    return (node_count(t) - 1) // 2


def is_increasing(t: LabeledBinaryTree) -> bool:
    """Singleton labels everywhere, and every child exceeds its parent."""
    if len(t.label) != 1:
        return False
    if t.is_leaf:
        return True
    x = t.label[0]
    return (
        is_increasing(t.left)
        and is_increasing(t.right)
        and t.left.label[0] > x
        and t.right.label[0] > x
    )


def is_active(t: LabeledBinaryTree) -> bool:
    """Whether the root of ``t`` is an active node."""
    if is_increasing(t):
        return False
    return t.is_leaf or (is_increasing(t.left) and is_increasing(t.right))


def first_active_node(t: LabeledBinaryTree) -> Optional[int]:
    """In-order index of the first active node, or ``None`` if ``t`` is increasing."""
    for i, v in enumerate(in_order(t)):
        if is_active(v):
            return i
    return None


def mirror(t: LabeledBinaryTree) -> LabeledBinaryTree:
    """Swap every pair of children and reverse every label."""
    if t.is_leaf:
        return LabeledBinaryTree(t.label[::-1])
    return LabeledBinaryTree(t.label[::-1], mirror(t.right), mirror(t.left))


# flat encoding ----------------------------------------------------------------
#
# Preorder, each node written as  flag, len(label), *label  with flag 1 for
# an internal node and 0 for a leaf.  This is what the compiled kernels eat.


def encode(t: LabeledBinaryTree) -> tuple[int, ...]:
    out: list[int] = []
    stack = [t]
    while stack:
        v = stack.pop()
        out.append(0 if v.is_leaf else 1)
        out.append(len(v.label))
        out.extend(v.label)
        if not v.is_leaf:
            stack.append(v.right)
            stack.append(v.left)
    return tuple(out)


def decode(code: Sequence[int]) -> LabeledBinaryTree:
    pos = 0

    def parse() -> LabeledBinaryTree:
        nonlocal pos
        if pos + 2 > len(code):
            raise ValueError("truncated tree code")
        flag, length = code[pos], code[pos + 1]
        if flag not in (0, 1) or length < 1 or pos + 2 + length > len(code):
            raise ValueError("malformed tree code")
        label = tuple(code[pos + 2 : pos + 2 + length])
        pos += 2 + length
        if flag == 0:
            return LabeledBinaryTree(label)
        left = parse()
        right = parse()
        return LabeledBinaryTree(label, left, right)

    t = parse()
    if pos != len(code):
        raise ValueError("trailing data in tree code")
    return t


def _preorder_template(shape: Shape) -> list[tuple[int, int]]:
    """``(flag, in-order index)`` for each node of ``shape`` in preorder."""
    out: list[tuple[int, int]] = []

    def walk(s: Shape, base: int) -> int:
        # returns the number of nodes in s; base is s's first in-order index
        if not s:
            out.append((0, base))
            return 1
        slot = len(out)
        out.append((1, -1))
        nl = walk(s[0], base)
        out[slot] = (1, base + nl)
        nr = walk(s[1], base + nl + 1)
        return nl + 1 + nr

    walk(shape, 0)
    return out


def iter_codes(shape: Shape, phi: SetComposition) -> Iterator[tuple[int, ...]]:
    """Encodings of every tree with the given shape and block sequence."""
    template = _preorder_template(shape)
    choices = [[(len(w),) + w for w in gen_unimodal(b)] for b in phi]
    for labels in product(*choices):
        code: list[int] = []
        for flag, idx in template:
            code.append(flag)
            code.extend(labels[idx])
        yield tuple(code)


# sampling -------------------------------------------------------------------


def _random_shape(k: int, rng: random.Random) -> Shape:
    if k == 0:
        return ()
    weights = [catalan(i) * catalan(k - 1 - i) for i in range(k)]
    i = rng.choices(range(k), weights=weights)[0]
    return (_random_shape(i, rng), _random_shape(k - 1 - i, rng))


@lru_cache(maxsize=None)
def _node_count_weights(n: int) -> tuple[int, ...]:
    return tuple(accumulate(count_O(2 * n + 1, 2 * k + 1) * 2 ** (2 * n - 2 * k) * catalan(k) for k in range(n + 1)))


def random_labeled_tree(n: int, rng: random.Random) -> LabeledBinaryTree:
    """Uniform sample from ``LB_{2n+1}``: node count, shape, blocks, labels."""
    k = rng.choices(range(n + 1), cum_weights=_node_count_weights(n))[0]
    shape = _random_shape(k, rng)
    phi = random_odd_set_composition(2 * n + 1, 2 * k + 1, rng)
    return fill_shape(shape, [random_unimodal(b, rng) for b in phi])


@lru_cache(maxsize=None)
def _templates(k: int) -> tuple[list[tuple[int, int]], ...]:
    return tuple(_preorder_template(s) for s in gen_complete_shapes(2 * k + 1))


def random_code(n: int, rng: random.Random) -> tuple[int, ...]:
    """Same distribution as ``encode(random_labeled_tree(n, rng))``, built directly.

    Shapes with a fixed node count are equally likely, so one uniform pick
    replaces the recursive Catalan-weighted descent.
    """
    k = rng.choices(range(n + 1), cum_weights=_node_count_weights(n))[0]
    template = rng.choice(_templates(k))
    phi = random_odd_set_composition(2 * n + 1, 2 * k + 1, rng)
    labels = []
    for block in phi:
        top = block[-1]
        left, right = [], []
        bits = rng.getrandbits(len(block))
        for i, x in enumerate(block[:-1]):
            (left if bits >> i & 1 else right).append(x)
        right.reverse()
        labels.append([len(block), *left, top, *right])
    code: list[int] = []
    for flag, idx in template:
        code.append(flag)
        code.extend(labels[idx])
    return tuple(code)


# json -----------------------------------------------------------------------


def to_json(t: LabeledBinaryTree) -> dict:
    if t.is_leaf:
        return {"label": list(t.label)}
    return {"label": list(t.label), "left": to_json(t.left), "right": to_json(t.right)}


def from_json(obj: dict) -> LabeledBinaryTree:
    label = tuple(int(x) for x in obj["label"])
    has_left, has_right = "left" in obj and obj["left"] is not None, "right" in obj and obj["right"] is not None
    if has_left != has_right:
        raise ValueError("a node needs both children or none")
    if not has_left:
        return LabeledBinaryTree(label)
    return LabeledBinaryTree(label, from_json(obj["left"]), from_json(obj["right"]))
