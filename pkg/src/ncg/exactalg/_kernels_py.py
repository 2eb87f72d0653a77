"""Pure-Python hot loops: sparse polynomial product and integer row reduction.

The compiled module ``_kernels`` implements the same two functions with the same
signatures; ``kernels`` picks whichever is importable.
"""

from fractions import Fraction


def poly_mul(a: dict, b: dict) -> dict:
    """Product of two term dicts (exponent tuple -> coefficient)."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ea, ca in a.items():
        for eb, cb in bitems:
            e = tuple([x + y for x, y in zip(ea, eb)])
            v = get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {e: c for e, c in out.items() if c}


def int_rref(rows: list, ncols: int):
    """Reduced row echelon form of an integer matrix.

    Fraction-free (Bareiss) forward elimination, then back substitution over
    the rationals.  Returns (rref rows as Fractions, pivot columns).
    """
    m = [list(r) for r in rows if any(r)]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
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
        piv = m[r][c]
        prow = m[r]
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
            f = out[i][c]
            if f:
                oi = out[i]
                for j in range(c, ncols):
                    if row[j]:
                        oi[j] -= f * row[j]
    return out, pivots
