"""Pure-Python fraction-free Gauss-Jordan elimination.

This is the fallback for the compiled ``_echelon`` extension; both expose the
same ``echelon`` function and must return identical results.
"""
from math import gcd


def echelon(rows, ncols):
    """Reduce an integer matrix to primitive reduced row echelon form.

    ``rows`` is a list of integer lists and is consumed. Returns ``(rows,
    pivots)`` where ``rows`` holds the nonzero rows of the reduced form, each
    with coprime entries and a positive pivot, and every pivot column is zero
    outside its own row. Dividing each row by its pivot entry gives the RREF.
    """
    rows = [r for r in rows if any(r)]
    nrows = len(rows)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        best = -1
        bestval = 0
        for i in range(rank, nrows):
            v = rows[i][c]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < bestval:
                    best = i
                    bestval = av
                    if av == 1:
                        break
        if best < 0:
            continue
        rows[rank], rows[best] = rows[best], rows[rank]
        prow = rows[rank]
        p = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(p, f)
            a = p // g
            b = f // g
            new = [a * x - b * y for x, y in zip(row, prow)]
            content = gcd(*new)
            if content > 1:
                new = [x // content for x in new]
            rows[i] = new
        pivots.append(c)
        rank += 1
    out = rows[:rank]
    for r, c in zip(out, pivots):
        if r[c] < 0:
            r[:] = [-x for x in r]
        content = gcd(*r)
        if content > 1:
            r[:] = [x // content for x in r]
    return out, pivots
