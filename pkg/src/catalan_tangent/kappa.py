"""The sign-reversing involution on labeled binary trees.

``kappa`` fixes exactly the increasing binary trees.  Any other tree is
changed only inside the subtree ``T_v`` rooted at its first active node
``v`` (in-order), which moves the tree to one with two more or two fewer
nodes while keeping the in-order word's inversion number.

Case (b) is case (a) seen in a mirror: swapping children and reversing
labels turns left chains into right chains and ``ind_r`` into ``ind_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .trees import (
    LabeledBinaryTree,
    first_active_node,
    is_increasing,
    mirror,
    validate_tree,
)
from .words import Word, is_unimodal

__all__ = [
    "INF",
    "FIXED",
    "CASE_I",
    "CASE_II",
    "CASE_A1",
    "CASE_A2",
    "CASE_B1",
    "CASE_B2",
    "CASES",
    "PARTNER_CASE",
    "KappaLogicError",
    "KappaStructureError",
    "KappaTrace",
    "left_indicator",
    "right_indicator",
    "classify",
    "kappa",
    "kappa_trace",
]

INF = math.inf
Indicator = Union[int, float]

FIXED = "fixed"
CASE_I = "I"
CASE_II = "II"
CASE_A1 = "IIIa1"
CASE_A2 = "IIIa2"
CASE_B1 = "IIIb1"
CASE_B2 = "IIIb2"
CASES = (FIXED, CASE_I, CASE_II, CASE_A1, CASE_A2, CASE_B1, CASE_B2)

PARTNER_CASE = {
    FIXED: FIXED,
    CASE_I: CASE_II,
    CASE_II: CASE_I,
    CASE_A1: CASE_A2,
    CASE_A2: CASE_A1,
    CASE_B1: CASE_B2,
    CASE_B2: CASE_B1,
}

_MIRRORED = {CASE_A1: CASE_B1, CASE_A2: CASE_B2}


class KappaLogicError(AssertionError):
    """A precondition of the construction failed; indicates a bug, not bad input."""


class KappaStructureError(ValueError):
    """The image is not a labeled binary tree on the same letters."""


@dataclass(frozen=True)
class KappaTrace:
    case: str
    active_index: Optional[int]
    ind_l: Optional[Indicator]
    ind_r: Optional[Indicator]
    image: LabeledBinaryTree


# chains and indicators --------------------------------------------------------


def _right_chain(t: LabeledBinaryTree) -> list[LabeledBinaryTree]:
    out = [t]
    while not t.is_leaf:
        t = t.right
        out.append(t)
    return out


def _left_chain(t: LabeledBinaryTree) -> list[LabeledBinaryTree]:
    out = [t]
    while not t.is_leaf:
        t = t.left
        out.append(t)
    return out


def _indicator(pi: Word, chain: list[int]) -> Indicator:
    """Left indicator from the label ``pi`` and the letters a_0..a_s of the chain."""
    k = (len(pi) - 1) // 2
    s = len(chain) - 1
    a0, a_s = chain[0], chain[-1]
    if k == 0:
        return INF if s == 0 else a0
    p1, p2 = pi[0], pi[1]
    if a_s > p1 and p1 < p2:
        return min(a0, p1)
    if s == 0:
        if not (a0 < p1 or p1 > p2):
            raise KappaLogicError("indicator branches do not cover this node")
        return INF
    if not (a_s < p1 or p1 > p2):
        raise KappaLogicError("indicator branches do not cover this node")
    return a0


def _singletons(nodes: list[LabeledBinaryTree]) -> list[int]:
    out = []
    for x in nodes:
        if len(x.label) != 1:
            raise KappaLogicError("chain node with a non-singleton label")
        out.append(x.label[0])
    return out


def _is_case_ii(tv: LabeledBinaryTree) -> bool:
    a, b = tv.left, tv.right
    return (
        a.is_leaf
        and b.is_leaf
        and len(a.label) == 1
        and len(b.label) == 1
        and is_unimodal(a.label + tv.label + b.label)
    )


def _check_case_iii(tv: LabeledBinaryTree) -> None:
    if tv.is_leaf:
        raise KappaLogicError("indicators are defined only at internal nodes")
    if not (is_increasing(tv.left) and is_increasing(tv.right)):
        raise KappaLogicError("both branches of an active node must be increasing")
    if _is_case_ii(tv):
        raise KappaLogicError("indicators are not used in case (II)")


def left_indicator(tv: LabeledBinaryTree) -> Indicator:
    """``ind_l`` of the active subtree ``tv`` (case (III) only)."""
    _check_case_iii(tv)
    return _indicator(tv.label, _singletons(_right_chain(tv.left)))


def right_indicator(tv: LabeledBinaryTree) -> Indicator:
    """``ind_r``: the left indicator of the mirror image."""
    _check_case_iii(tv)
    return _indicator(tv.label[::-1], _singletons(_left_chain(tv.right)))


# the local move -----------------------------------------------------------------


def _replace_on_right_chain(t: LabeledBinaryTree, depth: int, new: LabeledBinaryTree) -> LabeledBinaryTree:
    if depth == 0:
        return new
    return LabeledBinaryTree(t.label, t.left, _replace_on_right_chain(t.right, depth - 1, new))


def _case_a(tv: LabeledBinaryTree) -> tuple[str, LabeledBinaryTree]:
    pi = tv.label
    k = (len(pi) - 1) // 2
    chain = _right_chain(tv.left)
    letters = [x.label[0] for x in chain]
    if k > 0 and letters[-1] > pi[0] and pi[0] < pi[1]:
        i = next(i for i, a in enumerate(letters) if a > pi[0])
        u = chain[i]
        grafted = LabeledBinaryTree((pi[0],), u, LabeledBinaryTree((pi[1],)))
        new_left = _replace_on_right_chain(tv.left, i, grafted)
        return CASE_A1, LabeledBinaryTree(pi[2:], new_left, tv.right)
    s = len(chain) - 1
    if s < 1:
        raise KappaLogicError("case (a-2) needs a right chain of length at least two")
    u, last = chain[s - 1], chain[s]
    if not last.is_leaf or u.right is not last:
        raise KappaLogicError("the end of a maximal right chain must be a leaf")
    new_left = _replace_on_right_chain(tv.left, s - 1, u.left)
    return CASE_A2, LabeledBinaryTree((u.label[0], last.label[0]) + pi, new_left, tv.right)


def _transform(tv: LabeledBinaryTree) -> tuple[str, Optional[Indicator], Optional[Indicator], LabeledBinaryTree]:
    """Apply the move at the active node ``tv``; returns (case, ind_l, ind_r, T_v*)."""
    pi = tv.label
    if tv.is_leaf:
        if len(pi) < 3:
            raise KappaLogicError("an active leaf has a label of length at least three")
        new = LabeledBinaryTree(pi[1:-1], LabeledBinaryTree(pi[:1]), LabeledBinaryTree(pi[-1:]))
        return CASE_I, None, None, new
    if _is_case_ii(tv):
        return CASE_II, None, None, LabeledBinaryTree(tv.left.label + pi + tv.right.label)
    ind_l = left_indicator(tv)
    ind_r = right_indicator(tv)
    if ind_l == ind_r:
        raise KappaLogicError(f"indicators tie at {ind_l} for subtree {tv}")
    if ind_l < ind_r:
        case, new = _case_a(tv)
    else:
        case, new = _case_a(mirror(tv))
        case, new = _MIRRORED[case], mirror(new)
    return case, ind_l, ind_r, new


def _apply(t: LabeledBinaryTree):
    """Rebuild ``t`` with the move applied at its first active node."""
    if t.is_leaf or (is_increasing(t.left) and is_increasing(t.right)):
        return _transform(t)
    if not is_increasing(t.left):
        case, il, ir, new_left = _apply(t.left)
        return case, il, ir, LabeledBinaryTree(t.label, new_left, t.right)
    case, il, ir, new_right = _apply(t.right)
    return case, il, ir, LabeledBinaryTree(t.label, t.left, new_right)


def kappa_trace(t: LabeledBinaryTree, validate: bool = False) -> KappaTrace:
    """Apply the involution and report which case fired and the indicators."""
    if is_increasing(t):
        return KappaTrace(FIXED, None, None, None, t)
    active = first_active_node(t)
    case, il, ir, image = _apply(t)
    if validate:
        try:
            validate_tree(image)
        except ValueError as exc:
            raise KappaStructureError(f"kappa({t}) = {image}: {exc}") from exc
        if sorted(_letters(image)) != sorted(_letters(t)):
            raise KappaStructureError(f"kappa({t}) changed the letter set")
    return KappaTrace(case, active, il, ir, image)


def _letters(t: LabeledBinaryTree) -> list[int]:
    out = list(t.label)
    if not t.is_leaf:
        out += _letters(t.left) + _letters(t.right)
    return out


def kappa(t: LabeledBinaryTree, validate: bool = False) -> LabeledBinaryTree:
    return kappa_trace(t, validate).image


def classify(t: LabeledBinaryTree) -> str:
    return kappa_trace(t).case
