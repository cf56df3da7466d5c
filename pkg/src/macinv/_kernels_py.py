"""Pure-Python elimination kernel.

The compiled module ``macinv._kernels`` exposes the same function and falls
back to this one when an intermediate value leaves the int64 range.
"""

from math import gcd


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, ncols):
    """Fraction-free Gauss-Jordan elimination on integer rows.

    Returns ``(reduced, pivots)`` where ``reduced`` holds the nonzero rows of
    the echelon form (each primitive, positive at its pivot, zero at every
    other pivot column) and ``pivots`` their pivot columns in increasing
    order. Dividing each row by its pivot entry gives the exact RREF.
    """
    work = [_primitive(list(r)) for r in rows if any(r)]
    nrows = len(work)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        for p in range(rank, nrows):
            if work[p][c]:
                break
        else:
            continue
        work[rank], work[p] = work[p], work[rank]
        prow = work[rank]
        a = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            aa, bb = a // g, b // g
            work[i] = _primitive([aa * x - bb * y for x, y in zip(row, prow)])
        pivots.append(c)
        rank += 1
    out = work[:rank]
    for i, c in enumerate(pivots):
        if out[i][c] < 0:
            out[i] = [-x for x in out[i]]
    return out, pivots
