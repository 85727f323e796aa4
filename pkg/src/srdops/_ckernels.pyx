# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``.

Same names, same signatures, same results.
"""
from libc.stdlib cimport malloc, free

BACKEND = "cython"

ctypedef unsigned long long u64


def face_table(int n, facets):
    cdef bytearray table = bytearray(1 << n)
    cdef unsigned char[:] view = table
    cdef u64 facet, sub
    for f in facets:
        facet = f
        sub = facet
        while True:
            view[sub] = 1
            if sub == 0:
                break
            sub = (sub - 1) & facet
    return table


def ideal_violation(const unsigned char[:] is_face, int n, a, b, int bound, nonzero):
    cdef int i, k, width = bound + 1
    if n == 0:
        return None
    cdef int *vals = <int *> malloc(n * width * sizeof(int))
    cdef int *cnt = <int *> malloc(n * sizeof(int))
    cdef int *idx = <int *> malloc(n * sizeof(int))
    cdef u64 *src_bit = <u64 *> malloc(n * width * sizeof(u64))
    cdef u64 *dst_bit = <u64 *> malloc(n * width * sizeof(u64))
    cdef u64 src, dst
    cdef const unsigned char[:] row
    cdef int ai, bi, c
    result = None
    try:
        for i in range(n):
            row = nonzero[i]
            ai = a[i]
            bi = b[i]
            cnt[i] = 0
            for c in range(width):
                if row[c]:
                    k = i * width + cnt[i]
                    vals[k] = c
                    src_bit[k] = (<u64> 1 << i) if c > 0 else 0
                    dst_bit[k] = (<u64> 1 << i) if ai + c - bi > 0 else 0
                    cnt[i] += 1
            if cnt[i] == 0:
                return None
            idx[i] = 0
        while True:
            src = 0
            dst = 0
            for i in range(n):
                k = i * width + idx[i]
                src |= src_bit[k]
                dst |= dst_bit[k]
            if not is_face[src] and is_face[dst]:
                result = tuple([vals[i * width + idx[i]] for i in range(n)])
                return result
            i = n - 1
            while i >= 0:
                idx[i] += 1
                if idx[i] < cnt[i]:
                    break
                idx[i] = 0
                i -= 1
            if i < 0:
                return None
    finally:
        free(vals)
        free(cnt)
        free(idx)
        free(src_bit)
        free(dst_bit)


def count_face_box(const unsigned char[:] is_face, int n, long q):
    cdef long long total = 0
    cdef long *c
    cdef u64 mask
    cdef int i
    if n == 0:
        return int(is_face[0])
    c = <long *> malloc(n * sizeof(long))
    try:
        for i in range(n):
            c[i] = 0
        mask = 0
        while True:
            if is_face[mask]:
                total += 1
            i = n - 1
            while i >= 0:
                c[i] += 1
                if c[i] < q:
                    mask |= (<u64> 1 << i)
                    break
                c[i] = 0
                mask &= ~(<u64> 1 << i)
                i -= 1
            if i < 0:
                return total
    finally:
        free(c)


cdef void _walk(int pos, int m, int *order, u64 *below, u64 chosen, u64 forced, list out):
    cdef int node
    cdef u64 bit
    while pos < m:
        node = order[pos]
        bit = (<u64> 1) << node
        if forced & bit:
            chosen |= bit
            pos += 1
            continue
        _walk(pos + 1, m, order, below, chosen | bit, forced | below[node], out)
        pos += 1
    out.append(chosen)


def downsets(below):
    cdef int m = len(below)
    if m > 63:
        raise OverflowError("at most 63 poset nodes")
    keyed = sorted(range(m), key=lambda i: (-bin(below[i]).count("1"), i))
    cdef int *order = <int *> malloc((m + 1) * sizeof(int))
    cdef u64 *bl = <u64 *> malloc((m + 1) * sizeof(u64))
    cdef int i
    cdef list out = []
    try:
        for i in range(m):
            order[i] = keyed[i]
            bl[i] = below[i]
        _walk(0, m, order, bl, 0, 0, out)
    finally:
        free(order)
        free(bl)
    out.sort()
    return out
