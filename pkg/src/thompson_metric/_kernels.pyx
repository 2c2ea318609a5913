# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree-pair kernels; same contract as ``_kernels_py``.

Works directly on the ASCII text encoding.  Subtrees are addressed as
``[start, end)`` byte ranges so refinement never materialises a tree object.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy


cdef struct Buf:
    char* data
    Py_ssize_t size
    Py_ssize_t cap


cdef int buf_init(Buf* b, Py_ssize_t cap) except -1:
    if cap < 16:
        cap = 16
    b.data = <char*>malloc(cap)
    if b.data == NULL:
        raise MemoryError()
    b.size = 0
    b.cap = cap
    return 0


cdef int buf_put(Buf* b, const char* src, Py_ssize_t n) except -1:
    cdef Py_ssize_t cap
    cdef char* grown
    if b.size + n > b.cap:
        cap = b.cap * 2
        while cap < b.size + n:
            cap *= 2
        grown = <char*>realloc(b.data, cap)
        if grown == NULL:
            raise MemoryError()
        b.data = grown
        b.cap = cap
    memcpy(b.data + b.size, src, n)
    b.size += n
    return 0


cdef inline Py_ssize_t skip(const char* s, Py_ssize_t i) nogil:
    cdef int depth = 0
    if s[i] == b'.':
        return i + 1
    while True:
        if s[i] == b'(':
            depth += 1
        elif s[i] == b')':
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1


cdef inline Py_ssize_t count_leaves(const char* s, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t n = 0
    while i < j:
        if s[i] == b'.':
            n += 1
        i += 1
    return n


cdef struct Ranges:
    Py_ssize_t* start
    Py_ssize_t* end
    Py_ssize_t n


cdef Py_ssize_t extensions(const char* a, Py_ssize_t ia, const char* b, Py_ssize_t ib,
                           Ranges* ext_a, Ranges* ext_b) nogil:
    """Walk ``a`` and ``b`` in lockstep; return the end of the subtree in ``a``.

    Ranges in ``ext_a`` index into ``b`` and vice versa.  A leaf extension is
    stored as an empty range.
    """
    cdef Py_ssize_t jb, ja, k, nl
    if a[ia] == b'.':
        jb = skip(b, ib)
        ext_a.start[ext_a.n] = ib
        ext_a.end[ext_a.n] = jb if b[ib] != b'.' else ib
        ext_a.n += 1
        nl = count_leaves(b, ib, jb)
        for k in range(nl):
            ext_b.start[ext_b.n] = 0
            ext_b.end[ext_b.n] = 0
            ext_b.n += 1
        return ia + 1
    if b[ib] == b'.':
        ja = skip(a, ia)
        ext_b.start[ext_b.n] = ia
        ext_b.end[ext_b.n] = ja
        ext_b.n += 1
        nl = count_leaves(a, ia, ja)
        for k in range(nl):
            ext_a.start[ext_a.n] = 0
            ext_a.end[ext_a.n] = 0
            ext_a.n += 1
        return ja
    ia += 1
    ib += 1
    while a[ia] != b')':
        jb = skip(b, ib)
        ia = extensions(a, ia, b, ib, ext_a, ext_b)
        ib = jb
    return ia + 1


cdef int graft(const char* t, Py_ssize_t n, const char* src, Ranges* ext, Buf* out) except -1:
    cdef Py_ssize_t i = 0, run = 0, k = 0
    while i < n:
        if t[i] == b'.':
            if i > run:
                buf_put(out, t + run, i - run)
            if ext.end[k] > ext.start[k]:
                buf_put(out, src + ext.start[k], ext.end[k] - ext.start[k])
            else:
                buf_put(out, b".", 1)
            k += 1
            run = i + 1
        i += 1
    if n > run:
        buf_put(out, t + run, n - run)
    return 0


cdef int ranges_alloc(Ranges* r, Py_ssize_t n) except -1:
    r.start = <Py_ssize_t*>malloc((n + 1) * sizeof(Py_ssize_t))
    r.end = <Py_ssize_t*>malloc((n + 1) * sizeof(Py_ssize_t))
    r.n = 0
    if r.start == NULL or r.end == NULL:
        raise MemoryError()
    return 0


cdef void ranges_free(Ranges* r):
    free(r.start)
    free(r.end)


def product(int p, str xneg, str xpos, str yneg, str ypos):
    """Unreduced diagram of ``x o y`` plus a flag telling whether ``x`` had to grow."""
    cdef bytes bxn = xneg.encode("ascii"), bxp = xpos.encode("ascii")
    cdef bytes byn = yneg.encode("ascii"), byp = ypos.encode("ascii")
    cdef const char* tn = bxn
    cdef const char* tp = bxp
    cdef const char* sn = byn
    cdef const char* sp = byp
    cdef Ranges ext_t, ext_s
    cdef Buf out_neg, out_pos
    cdef Py_ssize_t k
    cdef bint grew = False
    ranges_alloc(&ext_t, count_leaves(tn, 0, len(bxn)))
    ranges_alloc(&ext_s, count_leaves(sp, 0, len(byp)))
    try:
        extensions(tn, 0, sp, 0, &ext_t, &ext_s)
        for k in range(ext_t.n):
            if ext_t.end[k] > ext_t.start[k]:
                grew = True
                break
        buf_init(&out_neg, len(byn) + len(bxn))
        try:
            graft(sn, len(byn), tn, &ext_s, &out_neg)
            neg = out_neg.data[:out_neg.size].decode("ascii")
        finally:
            free(out_neg.data)
        if grew:
            buf_init(&out_pos, len(bxp) + len(byp))
            try:
                graft(tp, len(bxp), sp, &ext_t, &out_pos)
                pos = out_pos.data[:out_pos.size].decode("ascii")
            finally:
                free(out_pos.data)
        else:
            pos = xpos
    finally:
        ranges_free(&ext_t)
        ranges_free(&ext_s)
    return neg, pos, grew


cdef Py_ssize_t mark_exposed(const char* s, Py_ssize_t n, int arity, char* mask) nogil:
    """Set ``mask[leaf]`` for the first leaf of each exposed caret; return the count."""
    cdef Py_ssize_t i = 0, leaf = 0, hits = 0, k
    cdef bint exposed
    while i < n:
        if s[i] == b'.':
            leaf += 1
        elif s[i] == b'(' and i + arity + 1 < n:
            exposed = True
            for k in range(1, arity + 1):
                if s[i + k] != b'.':
                    exposed = False
                    break
            if exposed:
                mask[leaf] = 1
                hits += 1
                leaf += arity
                i += arity + 2
                continue
        i += 1
    return hits


cdef Py_ssize_t collapse(const char* s, Py_ssize_t n, int arity, const char* keep, char* out) nogil:
    """Copy ``s`` into ``out`` with every exposed caret starting at a ``keep`` leaf replaced by a leaf."""
    cdef Py_ssize_t i = 0, o = 0, leaf = 0, k
    cdef bint exposed
    while i < n:
        if s[i] == b'(' and i + arity + 1 < n:
            exposed = True
            for k in range(1, arity + 1):
                if s[i + k] != b'.':
                    exposed = False
                    break
            if exposed:
                if keep[leaf]:
                    out[o] = b'.'
                    o += 1
                else:
                    for k in range(arity + 2):
                        out[o + k] = s[i + k]
                    o += arity + 2
                leaf += arity
                i += arity + 2
                continue
        if s[i] == b'.':
            leaf += 1
        out[o] = s[i]
        o += 1
        i += 1
    return o


def reduce(int p, str neg, str pos):
    """Cancel exposed caret pairs with matching leaf indices until none remain."""
    cdef bytes bn = neg.encode("ascii"), bp = pos.encode("ascii")
    cdef Py_ssize_t nn = len(bn), np_ = len(bp), leaves, k, common
    cdef int arity = p + 1
    cdef char* a
    cdef char* b
    cdef char* ta
    cdef char* tb
    cdef char* ma
    cdef char* mb
    cdef char* swap
    cdef bint changed = False
    leaves = count_leaves(bn, 0, nn)
    a = <char*>malloc(nn + 1)
    b = <char*>malloc(np_ + 1)
    ta = <char*>malloc(nn + 1)
    tb = <char*>malloc(np_ + 1)
    ma = <char*>malloc(leaves + 1)
    mb = <char*>malloc(leaves + 1)
    try:
        if a == NULL or b == NULL or ta == NULL or tb == NULL or ma == NULL or mb == NULL:
            raise MemoryError()
        memcpy(a, <const char*>bn, nn)
        memcpy(b, <const char*>bp, np_)
        while True:
            for k in range(leaves + 1):
                ma[k] = 0
                mb[k] = 0
            if mark_exposed(a, nn, arity, ma) == 0 or mark_exposed(b, np_, arity, mb) == 0:
                break
            common = 0
            for k in range(leaves):
                ma[k] = ma[k] & mb[k]
                common += ma[k]
            if common == 0:
                break
            changed = True
            nn = collapse(a, nn, arity, ma, ta)
            np_ = collapse(b, np_, arity, ma, tb)
            leaves -= common * p
            swap = a; a = ta; ta = swap
            swap = b; b = tb; tb = swap
        if not changed:
            return neg, pos
        return a[:nn].decode("ascii"), b[:np_].decode("ascii")
    finally:
        free(a); free(b); free(ta); free(tb); free(ma); free(mb)
