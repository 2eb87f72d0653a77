# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; identical semantics."""

from fractions import Fraction


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef list bitems
    cdef tuple ea, eb
    cdef Py_ssize_t n, k
    cdef list buf
    if len(a) < len(b):
        a, b = b, a
    bitems = list(b.items())
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in bitems:
            buf = [0] * n
            for k in range(n):
                buf[k] = <long>ea[k] + <long>eb[k]
            e = tuple(buf)
            v = out.get(e)
            if v is None:
                out[e] = ca * cb
            else:
                out[e] = v + ca * cb
    return {e: c for e, c in out.items() if c}


def int_rref(rows, Py_ssize_t ncols):
    cdef list m = [list(row0) for row0 in rows if any(row0)]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, best, k
    cdef list prow, row, out, oi
    prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        best = -1
        for i in range(r, nrows):
            if m[i][c]:
                if best < 0 or abs(m[i][c]) < abs(m[best][c]):
                    best = i
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        prow = m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (piv * row[j] - f * prow[j]) // prev
            else:
                for j in range(c, ncols):
                    row[j] = (piv * row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    out = [[Fraction(x) for x in m[i]] for i in range(r)]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        row = out[k]
        inv = 1 / row[c]
        for j in range(c, ncols):
            if row[j]:
                row[j] *= inv
        for i in range(k):
            oi = out[i]
            f = oi[c]
            if f:
                for j in range(c, ncols):
                    if row[j]:
                        oi[j] -= f * row[j]
    return out, pivots
