"""Free graded-commutative presentations realized as table algebras.

Monomials are exponent vectors over the generators in their listed order;
odd generators appear with exponent at most 1. In each degree the basis is
sorted by exponent vector, largest first, so ``a*b`` precedes ``a*c``
precedes ``b*c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .algebra import TableDGA
from .errors import DegreeMismatch
from .expr import ExpressionError, parse_polynomial
from .linalg import ONE, ZERO, RationalMatrix

Poly = dict  # exponent tuple -> Fraction


@dataclass(frozen=True)
class SullivanModel:
    """Generators ``(name, degree)`` and ``d`` on generators as expressions."""

    generators: tuple
    differential: Mapping = field(default_factory=dict)
    cap: int = 0
    name: str = "sullivan"
    weights: Mapping | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(d)) for n, d in self.generators))
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for n, d in self.generators:
            if d < 1:
                raise ValueError(f"generator {n} must have positive degree")
        unknown = set(self.differential) - set(names)
        if unknown:
            raise ValueError(f"differential given for unknown generators {sorted(unknown)}")

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.generators]

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.generators]


def monomials(degrees: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Admissible exponent vectors of total degree k, largest first."""
    n = len(degrees)
    out = []

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        d = degrees[i]
        top = 1 if d % 2 else remaining // d
        for e in range(min(top, remaining // d), -1, -1):
            acc.append(e)
            rec(i + 1, remaining - e * d, acc)
            acc.pop()

    rec(0, k, [])
    return out


def monomial_label(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(parts) if parts else "1"


def mono_mul(degrees: Sequence[int], m1: tuple, m2: tuple) -> tuple[int, tuple | None]:
    """Product of monomials as (sign, exponents), exponents None when zero."""
    odd1 = [i for i, e in enumerate(m1) if e and degrees[i] % 2]
    swaps = 0
    for j, e in enumerate(m2):
        if e and degrees[j] % 2:
            if m1[j]:
                return 0, None
            swaps += sum(1 for i in odd1 if i > j)
    return (-1 if swaps % 2 else 1), tuple(a + b for a, b in zip(m1, m2))


def poly_mul(degrees, p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            s, m = mono_mul(degrees, m1, m2)
            if s:
                out[m] = out.get(m, ZERO) + s * c1 * c2
    return {m: c for m, c in out.items() if c}


def mono_degree(degrees, m) -> int:
    return sum(d * e for d, e in zip(degrees, m))


def _gen_polys(model: SullivanModel) -> list[Poly]:
    names, degrees = model.names, model.degrees
    index = {n: i for i, n in enumerate(names)}
    out = []
    for gi, (g, deg) in enumerate(model.generators):
        expr = model.differential.get(g)
        poly: Poly = {}
        if expr is not None and expr != "0":
            try:
                terms = parse_polynomial(expr)
            except ExpressionError:
                raise
            for c, factors in terms:
                m = {(tuple(0 for _ in names)): ONE}
                for name, e in factors:
                    if name == "1":
                        continue
                    if name not in index:
                        raise ExpressionError(f"unknown generator {name!r} in d({g})")
                    unit = [0] * len(names)
                    unit[index[name]] = 1
                    for _ in range(e):
                        m = poly_mul(degrees, m, {tuple(unit): ONE})
                for mono, cm in m.items():
                    dm = mono_degree(degrees, mono)
                    if dm != deg + 1:
                        raise DegreeMismatch(f"d({g}) has a term of degree {dm}, expected {deg + 1}")
                    poly[mono] = poly.get(mono, ZERO) + c * cm
        out.append({m: c for m, c in poly.items() if c})
    return out


def realize_sullivan(model: SullivanModel) -> TableDGA:
    """Realize a free graded-commutative model as a validated TableDGA up to its cap."""
    cap = model.cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    names, degrees = model.names, model.degrees
    n = len(names)
    dgen = _gen_polys(model)
    bases = [monomials(degrees, k) for k in range(cap + 1)]
    pos = [{m: i for i, m in enumerate(b)} for b in bases]
    labels = [[monomial_label(names, m) for m in b] for b in bases]

    @lru_cache(maxsize=None)
    def d_mono(m: tuple) -> tuple:
        first = next((i for i, e in enumerate(m) if e), None)
        if first is None:
            return ()
        e, deg = m[first], degrees[first]
        head = [0] * n
        head[first] = e
        rest = list(m)
        rest[first] = 0
        rest = tuple(rest)
        # d(x^e) = e x^(e-1) dx  (e = 1 when x is odd)
        low = [0] * n
        low[first] = e - 1
        dhead = poly_mul(degrees, {tuple(low): Fraction(e)}, dgen[first])
        out = poly_mul(degrees, dhead, {rest: ONE})
        drest = dict(d_mono(rest))
        if drest:
            sign = -1 if (e * deg) % 2 else 1
            for mm, c in poly_mul(degrees, {tuple(head): ONE}, drest).items():
                out[mm] = out.get(mm, ZERO) + sign * c
        return tuple((mm, c) for mm, c in out.items() if c)

    mult = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            table = []
            for m1 in bases[i]:
                row = []
                for m2 in bases[j]:
                    s, m = mono_mul(degrees, m1, m2)
                    row.append({pos[i + j][m]: Fraction(s)} if s else {})
                table.append(row)
            mult[(i, j)] = table
    diff = []
    for k in range(cap):
        cols = []
        for m in bases[k]:
            v = [ZERO] * len(bases[k + 1])
            for mm, c in d_mono(m):
                v[pos[k + 1][mm]] += c
            cols.append(v)
        diff.append(RationalMatrix.from_columns(cols, len(bases[k + 1])) if cols else RationalMatrix.zeros(len(bases[k + 1]), 0))
    weights = None
    if model.weights is not None:
        gw = [int(model.weights[g]) for g in names]
        weights = [[sum(w * e for w, e in zip(gw, m)) for m in b] for b in bases]
    finite = all(d % 2 for d in degrees) and cap >= sum(degrees)
    A = TableDGA(model.name, cap, labels, mult, diff, weights, finite)
    A.sullivan = model
    return A


def free_dims(degrees: Sequence[int], cap: int) -> list[int]:
    """Dimension oracle from the generating function prod (1+z^odd) / (1-z^even)."""
    series = [1] + [0] * cap
    for d in degrees:
        if d % 2:
            series = [series[k] + (series[k - d] if k >= d else 0) for k in range(cap + 1)]
        else:
            for k in range(d, cap + 1):
                series[k] += series[k - d]
    return series
