# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: inversion counting and the tree involution on flat codes.

Trees arrive in the preorder encoding of ``trees.encode``: each node is
``flag, len, *label`` with flag 1 for internal nodes.  The involution works
on index arrays; case (b) is written out directly rather than mirrored, so
agreement with the pure-Python path is a genuine cross-check.
"""

from libc.string cimport memcpy

cdef enum:
    MAXNODES = 256
    MAXPOOL = 1024
    MAXCODE = 2048
    MAXCHAIN = 256

cdef long INF = 1L << 62

CASES = ("fixed", "I", "II", "IIIa1", "IIIa2", "IIIb1", "IIIb2")
cdef int PARTNER[7]
PARTNER[:] = [0, 2, 1, 4, 3, 6, 5]

cdef enum:
    F_FIXED = 1
    F_NOT_INVOLUTION = 2
    F_SIGN = 4
    F_INV = 8
    F_FIXED_MISMATCH = 16
    F_BAD_IMAGE = 32
    F_BAD_INPUT = 64
    F_CASE_PAIR = 128

FIXED = F_FIXED
NOT_INVOLUTION = F_NOT_INVOLUTION
SIGN = F_SIGN
INV = F_INV
FIXED_MISMATCH = F_FIXED_MISMATCH
BAD_IMAGE = F_BAD_IMAGE
BAD_INPUT = F_BAD_INPUT
CASE_PAIR = F_CASE_PAIR


cdef struct Tree:
    int nnodes
    int npool
    int root
    int left[MAXNODES]
    int right[MAXNODES]
    int start[MAXNODES]
    int length[MAXNODES]
    long pool[MAXPOOL]


def inv_count(w):
    cdef Py_ssize_t n = len(w), i, j
    cdef long total = 0
    cdef long buf[MAXCODE]
    cdef long x
    if n > MAXCODE:
        return _inv_slow(w)
    for i in range(n):
        buf[i] = w[i]
    for i in range(n):
        x = buf[i]
        for j in range(i + 1, n):
            if x > buf[j]:
                total += 1
    return total


def _inv_slow(w):
    total = 0
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                total += 1
    return total


# parsing / emitting -------------------------------------------------------------

cdef int _parse(Tree* t, long* code, int ncode, int pos, int* out) nogil:
    """Parse one subtree at ``pos``; returns the next position or -1."""
    cdef int flag, length, v, i, l, r
    if pos + 2 > ncode:
        return -1
    flag = <int>code[pos]
    length = <int>code[pos + 1]
    if length < 1 or pos + 2 + length > ncode or (flag != 0 and flag != 1):
        return -1
    if t.nnodes >= MAXNODES or t.npool + length > MAXPOOL:
        return -1
    v = t.nnodes
    t.nnodes += 1
    t.start[v] = t.npool
    t.length[v] = length
    for i in range(length):
        t.pool[t.npool + i] = code[pos + 2 + i]
    t.npool += length
    pos += 2 + length
    t.left[v] = -1
    t.right[v] = -1
    if flag == 1:
        pos = _parse(t, code, ncode, pos, &l)
        if pos < 0:
            return -1
        pos = _parse(t, code, ncode, pos, &r)
        if pos < 0:
            return -1
        t.left[v] = l
        t.right[v] = r
    out[0] = v
    return pos


cdef int _load(Tree* t, long* code, int ncode) nogil:
    t.nnodes = 0
    t.npool = 0
    if _parse(t, code, ncode, 0, &t.root) != ncode:
        return -1
    return 0


cdef int _emit(Tree* t, int v, long* out, int pos) nogil:
    cdef int i
    if pos + 2 + t.length[v] > MAXCODE:
        return -1
    out[pos] = 1 if t.left[v] >= 0 else 0
    out[pos + 1] = t.length[v]
    for i in range(t.length[v]):
        out[pos + 2 + i] = t.pool[t.start[v] + i]
    pos += 2 + t.length[v]
    if t.left[v] >= 0:
        pos = _emit(t, t.left[v], out, pos)
        if pos < 0:
            return -1
        pos = _emit(t, t.right[v], out, pos)
    return pos


cdef int _inorder_word(Tree* t, int v, long* out, int pos) nogil:
    cdef int i
    if t.left[v] >= 0:
        pos = _inorder_word(t, t.left[v], out, pos)
    for i in range(t.length[v]):
        out[pos + i] = t.pool[t.start[v] + i]
    pos += t.length[v]
    if t.right[v] >= 0:
        pos = _inorder_word(t, t.right[v], out, pos)
    return pos


# predicates ---------------------------------------------------------------------

cdef inline long _letter(Tree* t, int v) nogil:
    return t.pool[t.start[v]]


cdef int _mark_increasing(Tree* t, int v, char* inc) nogil:
    cdef int l = t.left[v], r = t.right[v]
    cdef int ok
    if l < 0:
        ok = t.length[v] == 1
    else:
        ok = _mark_increasing(t, l, inc)
        ok = _mark_increasing(t, r, inc) and ok
        ok = ok and t.length[v] == 1 and _letter(t, l) > _letter(t, v) and _letter(t, r) > _letter(t, v)
    inc[v] = ok
    return ok


cdef int _unimodal(long* w, int n) nogil:
    cdef int i = 0
    while i + 1 < n and w[i] < w[i + 1]:
        i += 1
    while i + 1 < n and w[i] > w[i + 1]:
        i += 1
    return i == n - 1


cdef int _valid(Tree* t, int nletters) nogil:
    """Odd unimodal labels whose letters are exactly 1..nletters."""
    cdef char seen[MAXPOOL + 1]
    cdef int v, i, total = 0
    cdef long x
    cdef int stack[MAXNODES]
    cdef int top = 0
    if nletters > MAXPOOL:
        return 0
    for i in range(nletters + 1):
        seen[i] = 0
    stack[0] = t.root
    top = 1
    while top > 0:
        top -= 1
        v = stack[top]
        if t.length[v] % 2 == 0 or not _unimodal(&t.pool[t.start[v]], t.length[v]):
            return 0
        for i in range(t.length[v]):
            x = t.pool[t.start[v] + i]
            if x < 1 or x > nletters or seen[x]:
                return 0
            seen[x] = 1
            total += 1
        if t.left[v] >= 0:
            if top + 2 > MAXNODES:
                return 0
            stack[top] = t.left[v]
            stack[top + 1] = t.right[v]
            top += 2
    return total == nletters


cdef int _count_nodes(Tree* t, int v) nogil:
    if t.left[v] < 0:
        return 1
    return _count_nodes(t, t.left[v]) + 1 + _count_nodes(t, t.right[v])


cdef long _indicator(long a0, long a_s, int s, int k, long p1, long p2) nogil:
    if k == 0:
        return INF if s == 0 else a0
    if a_s > p1 and p1 < p2:
        return a0 if a0 < p1 else p1
    if s == 0:
        return INF
    return a0


cdef int _new_node(Tree* t, int start, int length) nogil:
    cdef int v
    if t.nnodes >= MAXNODES:
        return -1
    v = t.nnodes
    t.nnodes += 1
    t.start[v] = start
    t.length[v] = length
    t.left[v] = -1
    t.right[v] = -1
    return v


cdef int _push_label(Tree* t, long* letters, int n) nogil:
    cdef int i, s = t.npool
    if t.npool + n > MAXPOOL:
        return -1
    for i in range(n):
        t.pool[s + i] = letters[i]
    t.npool += n
    return s


cdef int _kappa(Tree* t) nogil:
    """Apply the involution in place.  Returns the case index, or -1 on error."""
    cdef char inc[MAXNODES]
    cdef int v, l, r, k, s, tt, i, j, u, x, y, pos, ps, plen
    cdef int achain[MAXCHAIN]
    cdef int bchain[MAXCHAIN]
    cdef long buf[MAXPOOL]
    cdef long ind_l, ind_r, p1, p2, pl, pl2

    _mark_increasing(t, t.root, inc)
    if inc[t.root]:
        return 0
    v = t.root
    while True:
        l = t.left[v]
        r = t.right[v]
        if l < 0 or (inc[l] and inc[r]):
            break
        v = l if not inc[l] else r
    ps = t.start[v]
    plen = t.length[v]
    k = (plen - 1) // 2

    if l < 0:
        # (I) split pi_1 | pi_2..pi_2k | pi_2k+1
        if k < 1:
            return -1
        x = _new_node(t, ps, 1)
        y = _new_node(t, ps + plen - 1, 1)
        if x < 0 or y < 0:
            return -1
        t.start[v] = ps + 1
        t.length[v] = plen - 2
        t.left[v] = x
        t.right[v] = y
        return 1

    if (t.left[l] < 0 and t.left[r] < 0 and t.length[l] == 1 and t.length[r] == 1
            and plen + 2 <= MAXPOOL):
        buf[0] = _letter(t, l)
        for i in range(plen):
            buf[1 + i] = t.pool[ps + i]
        buf[plen + 1] = _letter(t, r)
        if _unimodal(buf, plen + 2):
            pos = _push_label(t, buf, plen + 2)
            if pos < 0:
                return -1
            t.start[v] = pos
            t.length[v] = plen + 2
            t.left[v] = -1
            t.right[v] = -1
            return 2

    # (III) right chain from the left child, left chain from the right child
    s = 0
    x = l
    while True:
        if s >= MAXCHAIN:
            return -1
        achain[s] = x
        if t.left[x] < 0:
            break
        x = t.right[x]
        s += 1
    tt = 0
    x = r
    while True:
        if tt >= MAXCHAIN:
            return -1
        bchain[tt] = x
        if t.left[x] < 0:
            break
        x = t.left[x]
        tt += 1

    p1 = t.pool[ps]
    p2 = t.pool[ps + 1] if k > 0 else 0
    pl = t.pool[ps + plen - 1]
    pl2 = t.pool[ps + plen - 2] if k > 0 else 0
    ind_l = _indicator(_letter(t, achain[0]), _letter(t, achain[s]), s, k, p1, p2)
    ind_r = _indicator(_letter(t, bchain[0]), _letter(t, bchain[tt]), tt, k, pl, pl2)
    if ind_l == ind_r:
        return -1

    if ind_l < ind_r:
        if k > 0 and _letter(t, achain[s]) > p1 and p1 < p2:
            # (a-1)
            i = 0
            while _letter(t, achain[i]) <= p1:
                i += 1
            u = achain[i]
            x = _new_node(t, ps, 1)
            y = _new_node(t, ps + 1, 1)
            if x < 0 or y < 0:
                return -1
            t.left[x] = u
            t.right[x] = y
            if i == 0:
                t.left[v] = x
            else:
                t.right[achain[i - 1]] = x
            t.start[v] = ps + 2
            t.length[v] = plen - 2
            return 3
        # (a-2)
        if s < 1 or t.left[achain[s]] >= 0:
            return -1
        u = achain[s - 1]
        buf[0] = _letter(t, u)
        buf[1] = _letter(t, achain[s])
        for i in range(plen):
            buf[2 + i] = t.pool[ps + i]
        pos = _push_label(t, buf, plen + 2)
        if pos < 0:
            return -1
        t.start[v] = pos
        t.length[v] = plen + 2
        if s - 1 == 0:
            t.left[v] = t.left[u]
        else:
            t.right[achain[s - 2]] = t.left[u]
        return 4

    if k > 0 and _letter(t, bchain[tt]) > pl and pl < pl2:
        # (b-1)
        j = 0
        while _letter(t, bchain[j]) <= pl:
            j += 1
        u = bchain[j]
        x = _new_node(t, ps + plen - 1, 1)
        y = _new_node(t, ps + plen - 2, 1)
        if x < 0 or y < 0:
            return -1
        t.left[x] = y
        t.right[x] = u
        if j == 0:
            t.right[v] = x
        else:
            t.left[bchain[j - 1]] = x
        t.length[v] = plen - 2
        return 5
    # (b-2)
    if tt < 1 or t.left[bchain[tt]] >= 0:
        return -1
    u = bchain[tt - 1]
    for i in range(plen):
        buf[i] = t.pool[ps + i]
    buf[plen] = _letter(t, bchain[tt])
    buf[plen + 1] = _letter(t, u)
    pos = _push_label(t, buf, plen + 2)
    if pos < 0:
        return -1
    t.start[v] = pos
    t.length[v] = plen + 2
    if tt - 1 == 0:
        t.right[v] = t.right[u]
    else:
        t.left[bchain[tt - 2]] = t.right[u]
    return 6


# python entry points ------------------------------------------------------------

cdef int _read_code(object code, long* buf) except -1:
    cdef Py_ssize_t n = len(code), i
    if n > MAXCODE:
        raise ValueError("tree code too long for the compiled kernel")
    for i in range(n):
        buf[i] = code[i]
    return <int>n


def kappa_code(code):
    """Image of an encoded tree under the involution, and the case index."""
    cdef Tree t
    cdef long buf[MAXCODE]
    cdef long out[MAXCODE]
    cdef int n = _read_code(code, buf)
    cdef int case, m
    if _load(&t, buf, n) < 0:
        raise ValueError("malformed tree code")
    case = _kappa(&t)
    if case < 0:
        raise AssertionError(f"involution failed on {tuple(code)}")
    m = _emit(&t, t.root, out, 0)
    if m < 0:
        raise ValueError("image too large for the compiled kernel")
    return tuple([out[i] for i in range(m)]), case


cdef int _audit(long* code, int n, long* inv_out, int* nodes_out) nogil:
    cdef Tree t0
    cdef Tree t1
    cdef long c1[MAXCODE]
    cdef long c2[MAXCODE]
    cdef long w[MAXPOOL]
    cdef char inc[MAXNODES]
    cdef int case1, case2, m1, m2, i, nl, flags = 0, n0, n1
    cdef long inv0

    if _load(&t0, code, n) < 0:
        return F_BAD_INPUT
    nl = t0.npool
    if not _valid(&t0, nl):
        return F_BAD_INPUT
    n0 = _count_nodes(&t0, t0.root)
    _inorder_word(&t0, t0.root, w, 0)
    inv0 = _inv(w, nl)
    inv_out[0] = inv0
    nodes_out[0] = n0
    _mark_increasing(&t0, t0.root, inc)
    memcpy(&t1, &t0, sizeof(Tree))
    case1 = _kappa(&t1)
    if case1 < 0:
        return F_BAD_IMAGE
    m1 = _emit(&t1, t1.root, c1, 0)
    if m1 < 0:
        return F_BAD_IMAGE
    if case1 == 0:
        if not inc[t0.root]:
            return F_FIXED | F_FIXED_MISMATCH
        return F_FIXED
    if inc[t0.root]:
        flags |= F_FIXED_MISMATCH
    if m1 == n:
        for i in range(n):
            if c1[i] != code[i]:
                break
        else:
            flags |= F_FIXED_MISMATCH
    # re-load so the image carries no unreachable bookkeeping
    if _load(&t1, c1, m1) < 0 or not _valid(&t1, nl):
        return flags | F_BAD_IMAGE
    n1 = _count_nodes(&t1, t1.root)
    if n1 - n0 != 2 and n0 - n1 != 2:
        flags |= F_SIGN
    _inorder_word(&t1, t1.root, w, 0)
    if _inv(w, nl) != inv0:
        flags |= F_INV
    case2 = _kappa(&t1)
    if case2 < 0:
        return flags | F_NOT_INVOLUTION
    m2 = _emit(&t1, t1.root, c2, 0)
    if m2 != n:
        flags |= F_NOT_INVOLUTION
    else:
        for i in range(n):
            if c2[i] != code[i]:
                flags |= F_NOT_INVOLUTION
                break
    if PARTNER[case1] != case2:
        flags |= F_CASE_PAIR
    return flags


cdef long _inv(long* w, int n) nogil:
    cdef long total = 0
    cdef int i, j
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] > w[j]:
                total += 1
    return total


def audit_code(code):
    """Check every involution property on one encoded tree; returns result bits."""
    cdef long buf[MAXCODE]
    cdef long inv0 = 0
    cdef int n, nodes = 0
    try:
        n = _read_code(code, buf)
    except (ValueError, TypeError, OverflowError):
        return F_BAD_INPUT
    return _audit(buf, n, &inv0, &nodes)


def audit_codes(codes):
    """Audit a batch of codes.

    Returns ``(population, fixed, bad, signed)``: ``bad`` lists
    ``(code, flags)`` for every failure and ``signed`` maps an inversion
    number to the signed count ``sum (-1)**h(T)`` of the batch.
    """
    cdef long buf[MAXCODE]
    cdef long inv0
    cdef int n, flags, nodes
    cdef long population = 0, fixed = 0
    bad = []
    signed = {}
    for code in codes:
        n = _read_code(code, buf)
        inv0 = 0
        nodes = 0
        flags = _audit(buf, n, &inv0, &nodes)
        population += 1
        if flags & F_FIXED:
            fixed += 1
        if flags & ~F_FIXED:
            bad.append((tuple(code), flags))
        if nodes:
            # h(T) = (nodes - 1) / 2
            signed[inv0] = signed.get(inv0, 0) + (-1 if (nodes - 1) // 2 % 2 else 1)
    return population, fixed, bad, signed


def audit_labelings(template, phi):
    """Audit every tree with a fixed shape and block sequence.

    ``template`` lists ``(flag, block index)`` per node in preorder, as built
    by ``trees._preorder_template``; ``phi`` is the sorted block sequence.
    Each block of size m has 2**(m-1) unimodal labels, one per subset of its
    non-maximal letters placed on the rising side; all are enumerated here
    without building Python tuples.  Returns the same summary as
    :func:`audit_codes`.
    """
    cdef int nb = len(phi), nt = len(template)
    cdef int i, j, b, pos, m, lo, hi, flags, nodes
    cdef long inv0
    cdef long population = 0, fixed = 0
    cdef long code[MAXCODE]
    cdef long letters[MAXPOOL]
    cdef int start[MAXNODES]
    cdef int size[MAXNODES]
    cdef unsigned long mask[MAXNODES]
    cdef int tflag[MAXNODES]
    cdef int tidx[MAXNODES]
    cdef long label[MAXPOOL]
    if nb > MAXNODES or nt != nb:
        raise ValueError("template and block sequence disagree")
    pos = 0
    for b in range(nb):
        block = phi[b]
        m = len(block)
        if m < 1 or m > 63 or pos + m > MAXPOOL:
            raise ValueError("block too large for the compiled kernel")
        start[b] = pos
        size[b] = m
        mask[b] = 0
        for i in range(m):
            letters[pos + i] = block[i]
        pos += m
    for i in range(nt):
        tflag[i] = template[i][0]
        tidx[i] = template[i][1]
    bad = []
    signed = {}
    while True:
        # write the code for the current masks
        pos = 0
        for i in range(nt):
            b = tidx[i]
            m = size[b]
            if pos + 2 + m > MAXCODE:
                raise ValueError("tree too large for the compiled kernel")
            code[pos] = tflag[i]
            code[pos + 1] = m
            lo = pos + 2
            hi = pos + 1 + m
            # rising letters fill from the left, falling from the right
            for j in range(m - 1):
                if mask[b] >> j & 1:
                    code[lo] = letters[start[b] + j]
                    lo += 1
                else:
                    code[hi] = letters[start[b] + j]
                    hi -= 1
            code[lo] = letters[start[b] + m - 1]
            pos += 2 + m
        inv0 = 0
        nodes = 0
        flags = _audit(code, pos, &inv0, &nodes)
        population += 1
        if flags & F_FIXED:
            fixed += 1
        if flags & ~F_FIXED:
            bad.append((tuple([code[i] for i in range(pos)]), flags))
        if nodes:
            signed[inv0] = signed.get(inv0, 0) + (-1 if (nodes - 1) // 2 % 2 else 1)
        # odometer over the per-block masks
        b = 0
        while b < nb:
            mask[b] += 1
            if mask[b] < (1UL << (size[b] - 1)):
                break
            mask[b] = 0
            b += 1
        if b == nb:
            break
    return population, fixed, bad, signed
