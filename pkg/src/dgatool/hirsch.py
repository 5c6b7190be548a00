"""Hirsch extensions A ⊗_τ Λ(t_1, ..., t_r) with odd-degree t_α and dt_α = τ(t_α) in A.

Generators are adjoined one at a time. In degree k the basis of A ⊗ Λ(t)
is the basis of A^k followed by u*t for u in the basis of A^(k-m), and

    (u t) v = (-1)^(m|v|) (u v) t,   u (v t) = (u v) t,   (u t)(v t) = 0,
    d(u t) = du t + (-1)^|u| u τ(t).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import Element, TableDGA
from .cohomology import DGAMorphism, cohomology
from .errors import CapExceeded, ClassesDiffer, DegreeMismatch, EvenGeneratorDegree, NoPrimitive, NotCocycle
from .linalg import ONE, ZERO, RationalMatrix, is_zero_vec, unit_vec


@dataclass
class HirschData:
    """Base algebra, odd generators ``(name, degree)`` and τ on each generator.

    ``tau`` values may be Elements of ``base`` or expression strings.
    """

    base: TableDGA
    generators: Sequence
    tau: Mapping
    cap: int | None = None
    name: str | None = None
    weights: Mapping | None = None  # explicit weights for generators, else wt(t) = wt(τ(t))

    def __post_init__(self):
        self.generators = [(str(n), int(m)) for n, m in self.generators]
        tau = {}
        for n, m in self.generators:
            if n not in self.tau:
                raise ValueError(f"no transgression given for {n}")
            v = self.tau[n]
            if isinstance(v, str):
                v = self.base.parse(v, m + 1)
            tau[n] = v
        self.tau = tau

    @property
    def total_degree(self) -> int:
        return sum(m for _, m in self.generators)


@dataclass
class HirschInfo:
    """How each basis element of an extension factors as (base element) * t-monomial."""

    base: TableDGA
    generators: list
    tau: dict
    factors: list  # per degree: list of (base degree, base index, tuple of generator names)

    def split(self, k: int, coords: Sequence) -> tuple[tuple, dict]:
        """Split a degree-k vector into its pure base part and the rest."""
        base_part = [ZERO] * self.base.dim(k)
        rest = {}
        for idx, c in enumerate(coords):
            if not c:
                continue
            bd, bi, ts = self.factors[k][idx]
            if ts:
                rest[idx] = c
            else:
                base_part[bi] = c
        return tuple(base_part), rest


def _check_tau(A: TableDGA, name: str, m: int, e: Element):
    if m % 2 == 0:
        raise EvenGeneratorDegree(f"generator {name} has even degree {m}")
    if e.algebra is not A:
        raise ValueError(f"τ({name}) is not an element of {A.name}")
    if e.degree != m + 1:
        raise DegreeMismatch(f"τ({name}) has degree {e.degree}, expected {m + 1}")
    if A.has_degree(m + 2) and not is_zero_vec(A.d_vec(m + 1, e.coords)):
        raise NotCocycle(f"τ({name}) is not closed")


def _extend_one(A: TableDGA, name: str, m: int, e: Sequence, cap: int, tw: int | None, factors=None, ename=None):
    """One elementary extension; returns the algebra and its factorization table."""
    if factors is None:
        factors = [[(k, i, ()) for i in range(A.dim(k))] for k in range(A.cap + 1)]
    labels, blocks, newf = [], [], []
    for k in range(cap + 1):
        ls = list(A.labels(k)) if A.has_degree(k) else []
        nb = len(ls)
        fs = [factors[k][i] for i in range(nb)] if nb else []
        if k - m >= 0 and A.has_degree(k - m):
            for i, lab in enumerate(A.labels(k - m)):
                ls.append(name if k == m else f"{lab}*{name}")
                bd, bi, ts = factors[k - m][i]
                fs.append((bd, bi, ts + (name,)))
        labels.append(ls)
        blocks.append(nb)
        newf.append(fs)

    def dimA(k):
        return A.dim(k) if A.has_degree(k) else 0

    mult = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            s = i + j
            ni, nj = blocks[i], blocks[j]
            table = []
            for a in range(len(labels[i])):
                row = []
                for b in range(len(labels[j])):
                    ta, tb = a >= ni, b >= nj
                    if ta and tb:
                        row.append({})
                        continue
                    if not ta and not tb:
                        row.append(dict(A.mul_basis(i, a, j, b)) if dimA(s) else {})
                    elif not ta:  # u (v t) = (u v) t
                        p = A.mul_basis(i, a, j - m, b - nj) if dimA(s - m) else {}
                        row.append({blocks[s] + r: c for r, c in p.items()})
                    else:  # (u t) v = (-1)^(m|v|) (u v) t
                        sign = -1 if (m * j) % 2 else 1
                        p = A.mul_basis(i - m, a - ni, j, b) if dimA(s - m) else {}
                        row.append({blocks[s] + r: sign * c for r, c in p.items()})
                table.append(row)
            mult[(i, j)] = table
    diff = []
    for k in range(cap):
        cols = []
        n1 = len(labels[k + 1])
        for a in range(len(labels[k])):
            v = [ZERO] * n1
            if a < blocks[k]:
                if dimA(k + 1):
                    for r, c in enumerate(A.d_matrix(k).col(a)):
                        v[r] = c
            else:
                u = a - blocks[k]
                ud = k - m
                if dimA(k + 1 - m):
                    for r, c in enumerate(A.d_matrix(ud).col(u)):
                        if c:
                            v[blocks[k + 1] + r] += c
                sign = -1 if ud % 2 else 1
                if dimA(k + 1):
                    uu = unit_vec(A.dim(ud), u)
                    for r, c in enumerate(A.mul_vec(ud, uu, m + 1, e)):
                        if c:
                            v[r] += sign * c
            cols.append(tuple(v))
        diff.append(RationalMatrix.from_columns(cols, n1) if cols else RationalMatrix.zeros(n1, 0))
    weights = None
    if A.weights is not None and tw is not None:
        weights = []
        for k in range(cap + 1):
            w = list(A.weights[k]) if A.has_degree(k) and k <= A.cap else []
            if k - m >= 0 and A.has_degree(k - m):
                w += [x + tw for x in (A.weights[k - m] if k - m <= A.cap else ())]
            weights.append(w)
    finite = A.finite and cap >= A.top_degree + m
    ext = TableDGA(ename or f"{A.name}⊗Λ({name})", cap, labels, mult, diff, weights, finite)
    return ext, newf


def _weight_of(A: TableDGA, e: Element) -> int | None:
    if A.weights is None:
        return None
    ws = {A.weights[e.degree][i] for i, c in enumerate(e.coords) if c}
    if len(ws) > 1:
        raise ValueError("τ is not homogeneous for the weights")
    return ws.pop() if ws else None


def hirsch_extend(h: HirschData) -> tuple[TableDGA, DGAMorphism]:
    """Build A ⊗_τ Λ(P) and the inclusion A -> A ⊗_τ Λ(P).

    The default cap is base.cap + Σ m_α for a finite base and base.cap
    otherwise. The result carries a :class:`HirschInfo` as ``.hirsch``.
    """
    base = h.base
    for n, m in h.generators:
        _check_tau(base, n, m, h.tau[n])
    if h.cap is not None:
        cap = h.cap
        if not base.finite and cap > base.cap:
            raise CapExceeded(f"extension cap {cap} exceeds the cap {base.cap} of the non-finite base")
    else:
        cap = base.cap + h.total_degree if base.finite else base.cap
    cur = base
    factors = None
    emb = {k: RationalMatrix.identity(base.dim(k)) for k in range(min(base.cap, cap) + 1)}
    for step, (n, m) in enumerate(h.generators):
        e = h.tau[n]
        # τ lives in the base; transport it into the current extension
        if cur is base:
            ecoords = e.coords
        elif m + 1 not in emb:
            # above the cap of a finite base, where τ can only be zero
            ecoords = (ZERO,) * cur.dim(m + 1)
        else:
            ecoords = emb[m + 1].apply(e.coords)
        ecur = Element(cur, m + 1, ecoords)
        if h.weights is not None and n in h.weights:
            tw = int(h.weights[n])
        else:
            tw = _weight_of(base, e) if base.weights is not None else None
        last = step == len(h.generators) - 1
        step_cap = cap if last else _intermediate_cap(cur, m, cap)
        name = h.name if (last and h.name) else None
        new, factors = _extend_one(cur, n, m, ecur.coords, step_cap, tw, factors, name)
        emb = {k: _embed_block(cur, new, k) @ emb[k] for k in emb if k <= new.cap}
        cur = new
    if not h.generators:
        cur = base.renamed(h.name or base.name)
    cur.hirsch = HirschInfo(base, list(h.generators), dict(h.tau), factors or [[(k, i, ()) for i in range(base.dim(k))] for k in range(base.cap + 1)])
    inc = DGAMorphism(base, cur, {k: emb[k] if k in emb else RationalMatrix.zeros(cur.dim(k), base.dim(k)) for k in range(cur.cap + 1)})
    return cur, inc


def _intermediate_cap(cur: TableDGA, m: int, final: int) -> int:
    if cur.finite:
        return max(final, cur.cap)
    return min(cur.cap, final)


def _embed_block(old: TableDGA, new: TableDGA, k: int) -> RationalMatrix:
    n_old = old.dim(k) if old.has_degree(k) else 0
    n_new = new.dim(k)
    return RationalMatrix([unit_vec(n_old, r) if r < n_old else (ZERO,) * n_old for r in range(n_new)], n_old)


def extend(base: TableDGA, gens: Sequence, tau: Mapping, cap: int | None = None, name: str | None = None) -> TableDGA:
    """Shorthand: build the extension and drop the inclusion."""
    return hirsch_extend(HirschData(base, gens, tau, cap, name))[0]


# ---------------------------------------------------------------------------
# the exact sequence of an elementary extension


@dataclass
class LesNode:
    label: str
    degree: int
    exact: bool
    detail: dict = field(default_factory=dict)


@dataclass
class LesReport:
    exact: bool
    nodes: list
    betti_extension: tuple
    betti_predicted: tuple

    def __bool__(self):
        return self.exact


def les_betti(base: TableDGA, e: Element, upto: int) -> tuple:
    """Betti numbers of A ⊗_e Λ(t) predicted from H(A) and multiplication by [e] alone.

    b_i = dim coker(e: H^(i-m-1) -> H^i) + dim ker(e: H^(i-m) -> H^(i+1)).
    """
    m = e.degree - 1
    H = cohomology(base, _base_upto(base, upto + 1))
    ce = H.class_of(e)
    out = []
    for i in range(upto + 1):
        bi = H.betti[i]
        r_in = H.class_mult_matrix(m + 1, ce, i - m - 1).rank() if i - m - 1 >= 0 else 0
        if i - m >= 0:
            b_src = H.betti[i - m]
            r_out = H.class_mult_matrix(m + 1, ce, i - m).rank() if i + 1 <= H.upto else 0
            ker = b_src - r_out
        else:
            ker = 0
        out.append(bi - r_in + ker)
    return tuple(out)


def _base_upto(base: TableDGA, want: int) -> int:
    if base.finite:
        return want
    if want > base.cap - 1:
        raise CapExceeded(f"base {base.name} needs cap >= {want + 1}")
    return want


def elementary_les_check(base: TableDGA, e: Element, upto: int, name: str = "t") -> LesReport:
    """Check exactness of H^(i-m-1)(A) -e-> H^i(A) -> H^i(A⊗Λt) -> H^(i-m)(A) -e-> H^(i+1)(A) for i <= upto."""
    m = e.degree - 1
    ext, inc = hirsch_extend(HirschData(base, [(name, m)], {name: e}, None if base.finite else base.cap))
    if upto > ext.cap - 1 and not ext.finite:
        raise CapExceeded(f"exact sequence up to degree {upto} needs cap >= {upto + 1}")
    HA = cohomology(base, _base_upto(base, upto + 1))
    HE = cohomology(ext, upto)
    ce = HA.class_of(e)
    info = ext.hirsch
    nodes = []

    def mult_e(j):
        # H^j(A) -> H^(j+m+1)(A)
        if j < 0:
            return RationalMatrix.zeros(HA.betti[j + m + 1] if 0 <= j + m + 1 <= HA.upto else 0, 0)
        return HA.class_mult_matrix(m + 1, ce, j)

    for i in range(upto + 1):
        f = inc.induced(i, HA, HE)
        # connecting map g: [u + v t] -> [v]
        gcols = []
        for r in HE.rep_basis(i):
            v = [ZERO] * (base.dim(i - m) if i - m >= 0 else 0)
            for idx, c in enumerate(r):
                if c:
                    bd, bi, ts = info.factors[i][idx]
                    if ts:
                        v[bi] = c
            gcols.append(HA.class_vector(i - m, v) if i - m >= 0 else ())
        bsrc = HA.betti[i - m] if i - m >= 0 else 0
        g = RationalMatrix.from_columns(gcols, bsrc) if gcols else RationalMatrix.zeros(bsrc, 0)
        ein = mult_e(i - m - 1)
        eout = mult_e(i - m) if i - m >= 0 else RationalMatrix.zeros(HA.betti[i + 1] if i + 1 <= HA.upto else 0, 0)
        # exactness at H^i(A)
        comp = (f @ ein) if ein.ncols else None
        ok_a = (ein.rank() + f.rank() == HA.betti[i]) and (comp is None or comp.is_zero())
        nodes.append(LesNode("H(A)", i, ok_a, {"rank_in": ein.rank(), "rank_out": f.rank(), "dim": HA.betti[i]}))
        comp = g @ f if f.ncols and g.nrows else None
        ok_e = (f.rank() + g.rank() == HE.betti[i]) and (comp is None or comp.is_zero())
        nodes.append(LesNode("H(ext)", i, ok_e, {"rank_in": f.rank(), "rank_out": g.rank(), "dim": HE.betti[i]}))
        if i - m >= 0:
            comp = eout @ g if g.ncols and eout.nrows else None
            ok_c = (g.rank() + eout.rank() == bsrc) and (comp is None or comp.is_zero())
            nodes.append(LesNode("H(A)[-m]", i, ok_c, {"rank_in": g.rank(), "rank_out": eout.rank(), "dim": bsrc}))
    predicted = les_betti(base, e, upto)
    exact = all(n.exact for n in nodes) and predicted == HE.betti
    return LesReport(exact, nodes, HE.betti, predicted)


# ---------------------------------------------------------------------------
# changing τ within its cohomology class


def tau_homotopy_iso(h1: HirschData, h2: HirschData) -> DGAMorphism:
    """The isomorphism ext(h1) -> ext(h2), t_α ↦ t_α + s_α with ds_α = τ1(t_α) - τ2(t_α)."""
    if h1.base is not h2.base:
        raise ValueError("extensions have different bases")
    if list(h1.generators) != list(h2.generators):
        raise ValueError("extensions have different generators")
    base = h1.base
    prims = {}
    for n, m in h1.generators:
        diff = h1.tau[n] - h2.tau[n]
        if diff.is_zero():
            prims[n] = base.zero(m)
            continue
        if m > base.cap and not base.finite:
            raise NoPrimitive(f"degree {m} is beyond the cap of {base.name}")
        s = base.d_matrix(m).solve(diff.coords)
        if s is None:
            raise ClassesDiffer(f"τ1({n}) and τ2({n}) are not cohomologous")
        prims[n] = Element(base, m, s)
    E1, _ = hirsch_extend(h1)
    E2, inc2 = hirsch_extend(h2)
    info = E1.hirsch
    images = {n: E2.basis_element(n) + inc2(prims[n]) for n, _ in h1.generators}
    maps = {}
    for k in range(E1.cap + 1):
        cols = []
        for bd, bi, ts in info.factors[k] if k < len(info.factors) else []:
            x = inc2(Element(base, bd, unit_vec(base.dim(bd), bi)))
            for n in ts:
                x = x * images[n]
            cols.append(x.coords)
        n2 = E2.dim(k)
        maps[k] = RationalMatrix.from_columns(cols, n2) if cols else RationalMatrix.zeros(n2, 0)
    return DGAMorphism(E1, E2, maps)
