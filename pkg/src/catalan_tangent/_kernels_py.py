"""Pure-Python implementations of the hot kernels.

Same signatures as the compiled ``_kernels`` module.  Tree arguments use the
flat preorder encoding from :func:`catalan_tangent.trees.encode`.
"""

from __future__ import annotations

CASES = ("fixed", "I", "II", "IIIa1", "IIIa2", "IIIb1", "IIIb2")
PARTNER = (0, 2, 1, 4, 3, 6, 5)

# audit_code result bits
FIXED = 1
NOT_INVOLUTION = 2
SIGN = 4
INV = 8
FIXED_MISMATCH = 16
BAD_IMAGE = 32
BAD_INPUT = 64
CASE_PAIR = 128


def inv_count(w) -> int:
    n = len(w)
    total = 0
    for i in range(n):
        x = w[i]
        for j in range(i + 1, n):
            if x > w[j]:
                total += 1
    return total


def kappa_code(code) -> tuple[tuple[int, ...], int]:
    """Image of an encoded tree under kappa, and the index of the case used."""
    from .kappa import kappa_trace
    from .trees import decode, encode

    tr = kappa_trace(decode(code))
    return encode(tr.image), CASES.index(tr.case)


def audit_code(code) -> int:
    """Check every involution property on one encoded tree; returns result bits."""
    from .kappa import kappa_trace
    from .trees import decode, encode, is_increasing, node_count, validate_tree, word_of

    try:
        t = decode(code)
        validate_tree(t)
    except ValueError:
        return BAD_INPUT
    first = kappa_trace(t)
    c1 = CASES.index(first.case)
    img = first.image
    if c1 == 0:
        return FIXED if is_increasing(t) and img == t else FIXED | FIXED_MISMATCH
    flags = 0
    if is_increasing(t) or img == t:
        flags |= FIXED_MISMATCH
    try:
        validate_tree(img)
        if sorted(word_of(img)) != sorted(word_of(t)):
            raise ValueError("letter set changed")
    except ValueError:
        return flags | BAD_IMAGE
    second = kappa_trace(img)
    if encode(second.image) != tuple(code):
        flags |= NOT_INVOLUTION
    if abs(node_count(img) - node_count(t)) != 2:
        flags |= SIGN
    if inv_count(word_of(img)) != inv_count(word_of(t)):
        flags |= INV
    if CASES.index(second.case) != PARTNER[c1]:
        flags |= CASE_PAIR
    return flags


def audit_codes(codes) -> tuple[int, int, list, dict[int, int]]:
    """Audit a batch; returns ``(population, fixed, bad, signed)`` like the compiled kernel."""
    from .trees import decode, half_edges, word_of

    population = fixed = 0
    bad: list = []
    signed: dict[int, int] = {}
    for code in codes:
        flags = audit_code(code)
        population += 1
        if flags & FIXED:
            fixed += 1
        if flags & ~FIXED:
            bad.append((tuple(code), flags))
        if not flags & BAD_INPUT:
            t = decode(code)
            e = inv_count(word_of(t))
            signed[e] = signed.get(e, 0) + (-1 if half_edges(t) % 2 else 1)
    return population, fixed, bad, signed


def audit_labelings(template, phi) -> tuple[int, int, list, dict[int, int]]:
    """Audit every tree with a fixed shape template and block sequence."""
    from itertools import product

    from .words import gen_unimodal

    choices = [[(len(w),) + w for w in gen_unimodal(b)] for b in phi]

    def codes():
        for labels in product(*choices):
            code: list[int] = []
            for flag, idx in template:
                code.append(flag)
                code.extend(labels[idx])
            yield tuple(code)

    return audit_codes(codes())
