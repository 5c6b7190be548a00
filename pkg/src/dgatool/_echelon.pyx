# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free Gauss-Jordan elimination (see _echelon_py)."""
from math import gcd


def echelon(list rows, Py_ssize_t ncols):
    cdef list kept = []
    cdef list row, prow, new
    cdef Py_ssize_t nrows, rank, c, i, j, best
    cdef object v, av, bestval, p, f, g, a, b, content
    for row in rows:
        for v in row:
            if v:
                kept.append(row)
                break
    rows = kept
    nrows = len(rows)
    cdef list pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        best = -1
        bestval = 0
        for i in range(rank, nrows):
            v = (<list>rows[i])[c]
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
        prow = <list>rows[rank]
        p = prow[c]
        for i in range(nrows):
            if i == rank:
                continue
            row = <list>rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(p, f)
            a = p // g
            b = f // g
            new = [None] * ncols
            for j in range(ncols):
                new[j] = a * row[j] - b * prow[j]
            content = gcd(*new)
            if content > 1:
                for j in range(ncols):
                    new[j] = new[j] // content
            rows[i] = new
        pivots.append(c)
        rank += 1
    cdef list out = rows[:rank]
    for i in range(rank):
        row = <list>out[i]
        c = pivots[i]
        if row[c] < 0:
            for j in range(ncols):
                row[j] = -row[j]
        content = gcd(*row)
        if content > 1:
            for j in range(ncols):
                row[j] = row[j] // content
    return out, pivots
