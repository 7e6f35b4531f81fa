# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prefix-replacement kernels.

Words are packed as sentinel-bit integers: ``w`` becomes ``int("1" + w, 2)``,
so the bit length minus one is the word length and a prefix test is a
shift.  Words longer than 62 letters raise OverflowError; the caller then
uses the pure-Python twin.
"""

from libc.stdlib cimport malloc, free, qsort
from libc.stdint cimport uint64_t
from cpython.unicode cimport PyUnicode_DecodeASCII

cdef int MAX_LEN = 62

ctypedef struct Pair:
    uint64_t key
    uint64_t d
    uint64_t c


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline int wlen(uint64_t x) noexcept nogil:
    return 63 - __builtin_clzll(x)


cdef inline bint is_prefix(uint64_t a, int la, uint64_t b, int lb) noexcept nogil:
    return la <= lb and (b >> (lb - la)) == a


cdef uint64_t pack(str w) except 0:
    cdef Py_ssize_t n = len(w)
    cdef uint64_t x = 1
    cdef Py_UCS4 ch
    if n > MAX_LEN:
        raise OverflowError("word too long for compiled kernel")
    for ch in w:
        x = (x << 1) | (ch == u"1")
    return x


cdef inline str unpack(uint64_t x):
    cdef char buf[64]
    cdef int n = wlen(x)
    cdef int i
    for i in range(n):
        buf[n - 1 - i] = b"1" if (x >> i) & 1 else b"0"
    return PyUnicode_DecodeASCII(buf, n, NULL)


cdef inline uint64_t sort_key(uint64_t x) noexcept nogil:
    # left-align below the sentinel: lexicographic order on prefix-free sets
    cdef int lx = wlen(x)
    return (x ^ (<uint64_t>1 << lx)) << (63 - lx)


cdef int cmp_pair(const void *a, const void *b) noexcept nogil:
    cdef uint64_t ka = (<Pair *>a).key
    cdef uint64_t kb = (<Pair *>b).key
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    # equal keys only arise for ε and words of zeros; shorter first
    return (wlen((<Pair *>a).d) > wlen((<Pair *>b).d)) - (wlen((<Pair *>a).d) < wlen((<Pair *>b).d))


cdef Py_ssize_t reduce_sorted(Pair *p, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, top = 0
    cdef uint64_t d, c
    for i in range(n):
        d = p[i].d
        c = p[i].c
        while (
            top > 0
            and d > 1 and c > 1
            and (d & 1) and (c & 1)
            and p[top - 1].d == (d ^ 1) and p[top - 1].c == (c ^ 1)
        ):
            top -= 1
            d >>= 1
            c >>= 1
        p[top].d = d
        p[top].c = c
        top += 1
    return top


cdef tuple finish(Pair *p, Py_ssize_t n):
    cdef Py_ssize_t i, top
    for i in range(n):
        p[i].key = sort_key(p[i].d)
    qsort(p, n, sizeof(Pair), cmp_pair)
    top = reduce_sorted(p, n)
    return tuple([(unpack(p[i].d), unpack(p[i].c)) for i in range(top)])


cdef Py_ssize_t load(pairs, uint64_t *ds, uint64_t *cs) except -1:
    cdef Py_ssize_t i = 0
    for d, c in pairs:
        ds[i] = pack(d)
        cs[i] = pack(c)
        i += 1
    return i


cdef Py_ssize_t compose_into(pairs_out, pairs_in, Pair **result) except -1:
    """Fill ``*result`` with the unreduced composite; returns its length."""
    cdef Py_ssize_t n_out = len(pairs_out)
    cdef Py_ssize_t n_in = len(pairs_in)
    cdef Py_ssize_t i, j, m = 0, cap
    cdef uint64_t *od = <uint64_t *>malloc((n_out + n_in + 2) * 2 * sizeof(uint64_t))
    cdef uint64_t *oc = od + (n_out + 1)
    cdef uint64_t *idm = oc + (n_out + 1)
    cdef uint64_t *icd = idm + (n_in + 1)
    cdef Pair *out
    cdef uint64_t di, ci, mask
    cdef int ldi, lci, lod, k
    if od == NULL:
        raise MemoryError()
    # the composite lives on the common refinement of two partitions with
    # n_in and n_out cells, which has at most n_in + n_out - 1 cells
    cap = n_out + n_in + 1
    out = <Pair *>malloc(cap * sizeof(Pair))
    if out == NULL:
        free(od)
        raise MemoryError()
    try:
        load(pairs_out, od, oc)
        load(pairs_in, idm, icd)
        for i in range(n_in):
            di = idm[i]
            ci = icd[i]
            ldi = wlen(di)
            lci = wlen(ci)
            for j in range(n_out):
                lod = wlen(od[j])
                if is_prefix(od[j], lod, ci, lci):
                    k = lci - lod
                    if wlen(oc[j]) + k > MAX_LEN:
                        raise OverflowError("composite word too long")
                    mask = (<uint64_t>1 << k) - 1
                    out[m].d = di
                    out[m].c = (oc[j] << k) | (ci & mask)
                    m += 1
                    break
                if is_prefix(ci, lci, od[j], lod):
                    k = lod - lci
                    if ldi + k > MAX_LEN:
                        raise OverflowError("composite word too long")
                    mask = (<uint64_t>1 << k) - 1
                    out[m].d = (di << k) | (od[j] & mask)
                    out[m].c = oc[j]
                    m += 1
        result[0] = out
        out = NULL
        return m
    finally:
        free(od)
        if out != NULL:
            free(out)


def reduce_pairs(pairs):
    cdef Py_ssize_t n = len(pairs)
    cdef Pair *p = <Pair *>malloc((n + 1) * sizeof(Pair))
    cdef Py_ssize_t i = 0
    if p == NULL:
        raise MemoryError()
    try:
        for dw, cw in pairs:
            p[i].d = pack(dw)
            p[i].c = pack(cw)
            i += 1
        return finish(p, n)
    finally:
        free(p)


def compose_pairs(outer, inner):
    cdef Pair *p = NULL
    cdef Py_ssize_t m, i
    m = compose_into(outer, inner, &p)
    try:
        return [(unpack(p[i].d), unpack(p[i].c)) for i in range(m)]
    finally:
        free(p)


def compose_reduce(outer, inner):
    cdef Pair *p = NULL
    cdef Py_ssize_t m
    m = compose_into(outer, inner, &p)
    try:
        return finish(p, m)
    finally:
        free(p)
