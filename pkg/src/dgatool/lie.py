"""Free Lie algebras on degree-one generators, inside the tensor algebra.

Lie polynomials are dicts ``word -> Fraction`` with words as tuples of
generator indices. The Lyndon words with their standard bracketing form the
basis; the standard bracketing of ``w`` is ``w`` plus lexicographically
larger words, so coordinates are read off by peeling the smallest word.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Poly = dict  # tuple[int, ...] -> Fraction


def lyndon_words(n: int, k: int) -> list[tuple[int, ...]]:
    """Lyndon words of length exactly k over {0..n-1}, lexicographic (Duval)."""
    if n <= 0 or k <= 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == k:
            out.append(tuple(w))
        while len(w) < k:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return out


def mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def witt(n: int, k: int) -> int:
    """Dimension of the degree-k piece of the free Lie algebra on n generators."""
    return sum(mobius(d) * n ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return w[:i], v
    raise ValueError(f"{w} has length 1")


def _is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def add_into(acc: Poly, p: Poly, c=1):
    for w, x in p.items():
        y = acc.get(w, 0) + c * x
        if y:
            acc[w] = y
        else:
            acc.pop(w, None)


def tmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for u, a in p.items():
        for v, b in q.items():
            w = u + v
            y = out.get(w, 0) + a * b
            if y:
                out[w] = y
            else:
                out.pop(w)
    return out


def bracket(p: Poly, q: Poly) -> Poly:
    out = tmul(p, q)
    add_into(out, tmul(q, p), -1)
    return out


def gen(i: int) -> Poly:
    return {(i,): 1}


@lru_cache(maxsize=None)
def _std_bracket(w: tuple) -> tuple:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(bracket(dict(_std_bracket(u)), dict(_std_bracket(v))).items())


def std_bracket(w: tuple) -> Poly:
    """Tensor expansion of the standard bracketing P_w of a Lyndon word."""
    return dict(_std_bracket(tuple(w)))


def to_lyndon(p: Poly) -> dict:
    """Lyndon coordinates of a Lie polynomial; raises ValueError if p is not Lie."""
    p = dict(p)
    out = {}
    while p:
        w = min(p)
        if not _is_lyndon(w):
            raise ValueError(f"not a Lie polynomial (leading word {w})")
        c = p[w]
        out[w] = c
        add_into(p, std_bracket(w), -c)
    return out


def from_lyndon(coords: dict) -> Poly:
    out: Poly = {}
    for w, c in coords.items():
        add_into(out, std_bracket(w), c)
    return out


def homogeneous_parts(p: Poly) -> dict:
    parts: dict = {}
    for w, c in p.items():
        parts.setdefault(len(w), {})[w] = c
    return parts


def substitute(p: Poly, images: dict) -> Poly:
    """Apply the algebra map sending letter i to images[i] (letters not listed are fixed)."""
    out: Poly = {}
    for w, c in p.items():
        term: Poly = {(): c}
        for letter in w:
            term = tmul(term, images.get(letter, {(letter,): 1}))
            if not term:
                break
        add_into(out, term)
    return out


def relabel(p: Poly, mapping: dict) -> Poly:
    return {tuple(mapping[x] for x in w): c for w, c in p.items()}


class SparseEchelon:
    """Integer row echelon over sparse vectors keyed by words; tracks rank only."""

    def __init__(self):
        self.rows: dict = {}  # pivot word -> (pivot coefficient, row)

    def __len__(self):
        return len(self.rows)

    @staticmethod
    def _integral(v: dict) -> dict:
        den = 1
        for c in v.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        out = {w: int(c * den) for w, c in v.items() if c}
        g = 0
        for c in out.values():
            g = gcd(g, c)
        return {w: c // g for w, c in out.items()} if g > 1 else out

    def reduce(self, v: dict) -> dict:
        v = self._integral(v)
        while v:
            w = min(v)
            row = self.rows.get(w)
            if row is None:
                return v
            p, r = row
            f = v[w]
            g = gcd(p, f)
            a, b = p // g, f // g
            new = {u: a * c for u, c in v.items()}
            for u, c in r.items():
                y = new.get(u, 0) - b * c
                if y:
                    new[u] = y
                else:
                    new.pop(u, None)
            v = self._integral(new) if new else new
        return v

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        w = min(v)
        if v[w] < 0:
            v = {u: -c for u, c in v.items()}
        self.rows[w] = (v[w], v)
        return True

    def basis(self) -> list[dict]:
        return [r for _, r in self.rows.values()]
