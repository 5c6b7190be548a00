"""Cohomology rings, morphisms, q-equivalences, truncations and Massey products."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Element, TableDGA
from .errors import CapExceeded, DGAError, NotCocycle, ProductNotExact
from .linalg import (
    ONE,
    ZERO,
    EchelonBasis,
    RationalMatrix,
    complement_basis,
    is_zero_vec,
    span_rank,
    unit_vec,
    vec,
    zero_vec,
)


class _Degree:
    """Cocycles, coboundaries and representatives of one degree."""

    def __init__(self, A: TableDGA, k: int):
        n = A.dim(k)
        self.n = n
        self.cocycles = A.d_matrix(k).kernel() if n else []
        prev = A.d_matrix(k - 1) if k > 0 else None
        self.coboundaries = prev.image() if prev is not None and prev.ncols else []
        eb = EchelonBasis(n)
        for b in self.coboundaries:
            eb.add(b)
        self.reps = [z for z in self.cocycles if eb.add(z)]
        self.betti = len(self.reps)
        frame = list(self.coboundaries) + list(self.reps)
        frame += complement_basis(frame, n)
        self.frame = RationalMatrix.from_columns(frame, n) if n else RationalMatrix.zeros(0, 0)
        self.frame_inv = self.frame.inverse() if n else self.frame
        self.nb = len(self.coboundaries)

    def coords(self, v: Sequence) -> tuple:
        return self.frame_inv.apply(v)


def _degree_data(A: TableDGA, k: int) -> _Degree:
    cache = A.__dict__.setdefault("_hcache", {})
    if k not in cache:
        A.require(k + 1, "cohomology")
        cache[k] = _Degree(A, k)
    return cache[k]


class CohomologyRing:
    """H^k(A) for k <= upto, on chosen representative cocycles."""

    def __init__(self, A: TableDGA, upto: int):
        if upto > A.cap - 1 and not A.finite:
            raise CapExceeded(f"cohomology of {A.name} up to degree {upto} needs cap >= {upto + 1}, cap is {A.cap}")
        self.source = A
        self.upto = upto
        self._deg = [_degree_data(A, k) for k in range(upto + 1)]
        self.betti = tuple(D.betti for D in self._deg)
        self._mult = {}

    def _data(self, k: int) -> _Degree:
        if k < 0:
            raise ValueError("negative degree")
        if k > self.upto:
            return _degree_data(self.source, k)
        return self._deg[k]

    def cocycle_basis(self, k: int) -> list:
        return list(self._data(k).cocycles)

    def coboundary_basis(self, k: int) -> list:
        return list(self._data(k).coboundaries)

    def rep_basis(self, k: int) -> list:
        return list(self._data(k).reps)

    def rep(self, k: int, i: int) -> Element:
        return Element(self.source, k, self._data(k).reps[i])

    def reps(self, k: int) -> list[Element]:
        return [Element(self.source, k, r) for r in self._data(k).reps]

    def is_cocycle(self, x: Element) -> bool:
        return is_zero_vec(self.source.d_vec(x.degree, x.coords))

    def class_vector(self, k: int, v: Sequence) -> tuple:
        """Coordinates of the class of the cocycle ``v`` on the representatives."""
        D = self._data(k)
        if D.n == 0:
            return ()
        if not is_zero_vec(self.source.d_vec(k, v)):
            raise NotCocycle(f"element of degree {k} is not closed")
        c = D.coords(v)
        if any(c[D.nb + D.betti:]):
            raise NotCocycle(f"element of degree {k} is not closed")
        return tuple(c[D.nb : D.nb + D.betti])

    def class_of(self, x: Element) -> tuple:
        return self.class_vector(x.degree, x.coords)

    def is_exact(self, x: Element) -> bool:
        return not any(self.class_of(x))

    def primitive(self, x: Element) -> Element | None:
        """Some y with dy = x, or None."""
        if x.degree == 0:
            return None
        y = self.source.d_matrix(x.degree - 1).solve(x.coords)
        return None if y is None else Element(self.source, x.degree - 1, y)

    def mult_h(self, i: int, j: int) -> list[list[tuple]]:
        """Structure constants of H: class of rep_a * rep_b, for i + j <= upto."""
        if (i, j) not in self._mult:
            A = self.source
            Ri, Rj = self._data(i).reps, self._data(j).reps
            self._mult[(i, j)] = [[self.class_vector(i + j, A.mul_vec(i, u, j, v)) for v in Rj] for u in Ri]
        return self._mult[(i, j)]

    def multiply_classes(self, i: int, u: Sequence, j: int, v: Sequence) -> tuple:
        A = self.source
        D = self._data
        x = _combine(D(i).reps, u, A.dim(i))
        y = _combine(D(j).reps, v, A.dim(j))
        return self.class_vector(i + j, A.mul_vec(i, x, j, y))

    def class_mult_matrix(self, i: int, u: Sequence, j: int) -> RationalMatrix:
        """Matrix of multiplication by the class ``u`` in H^i from H^j to H^(i+j)."""
        bj, bk = self._data(j).betti, self._data(i + j).betti
        cols = [self.multiply_classes(i, u, j, unit_vec(bj, b)) for b in range(bj)]
        return RationalMatrix.from_columns(cols, bk) if cols else RationalMatrix.zeros(bk, 0)


def _combine(basis, coeffs, n) -> tuple:
    out = [ZERO] * n
    for c, b in zip(coeffs, basis):
        if c:
            for r, x in enumerate(b):
                if x:
                    out[r] += c * x
    return tuple(out)


def cohomology(A: TableDGA, upto: int | None = None) -> CohomologyRing:
    if upto is None:
        upto = A.cap if A.finite else A.cap - 1
    return CohomologyRing(A, upto)


def betti_numbers(A: TableDGA, upto: int | None = None) -> tuple:
    return cohomology(A, upto).betti


# ---------------------------------------------------------------------------
# morphisms


class DGAMorphism:
    """A CDGA map given degreewise by matrices target.dim(k) x source.dim(k)."""

    def __init__(self, source: TableDGA, target: TableDGA, maps: Mapping[int, RationalMatrix] | Sequence, validate: bool = True):
        self.source = source
        self.target = target
        if not isinstance(maps, Mapping):
            maps = dict(enumerate(maps))
        self.cap = _common_cap(source, target)
        self.maps = {}
        for k in range(self.cap + 1):
            m = maps.get(k)
            shape = (target.dim(k), source.dim(k))
            if m is None:
                m = RationalMatrix.zeros(*shape)
            if m.shape != shape:
                raise ValueError(f"map in degree {k} has shape {m.shape}, expected {shape}")
            self.maps[k] = m
        if validate:
            self.validate()

    def __repr__(self):
        return f"DGAMorphism({self.source.name} -> {self.target.name})"

    def matrix(self, k: int) -> RationalMatrix:
        if k > self.cap:
            if self.source.dim(k) == 0 or self.target.dim(k) == 0:
                return RationalMatrix.zeros(self.target.dim(k), self.source.dim(k))
            raise CapExceeded(f"morphism known only up to degree {self.cap}")
        return self.maps[k]

    def __call__(self, x: Element) -> Element:
        if x.algebra is not self.source:
            raise ValueError("element is not in the source algebra")
        return Element(self.target, x.degree, self.matrix(x.degree).apply(x.coords))

    def validate(self):
        S, T = self.source, self.target
        if self.maps[0].apply((ONE,)) != (ONE,):
            raise DGAError("morphism does not preserve the unit")
        for k in range(self.cap):
            if self.maps[k + 1] @ S.d_matrix(k) != T.d_matrix(k) @ self.maps[k]:
                raise DGAError(f"morphism does not commute with d in degree {k}")
        for i in range(1, self.cap + 1):
            for j in range(i, self.cap + 1 - i):
                mi, mj, mk = self.maps[i], self.maps[j], self.maps[i + j]
                for a in range(S.dim(i)):
                    ua = unit_vec(S.dim(i), a)
                    fa = mi.apply(ua)
                    for b in range(S.dim(j)):
                        ub = unit_vec(S.dim(j), b)
                        if mk.apply(S.mul_vec(i, ua, j, ub)) != T.mul_vec(i, fa, j, mj.apply(ub)):
                            raise DGAError(f"morphism is not multiplicative on {S.labels(i)[a]}*{S.labels(j)[b]}")

    def induced(self, k: int, HS: CohomologyRing | None = None, HT: CohomologyRing | None = None) -> RationalMatrix:
        """Matrix of H^k(phi) on representative bases."""
        HS = HS or cohomology(self.source, k)
        HT = HT or cohomology(self.target, k)
        m = self.matrix(k)
        cols = [HT.class_vector(k, m.apply(r)) for r in HS.rep_basis(k)]
        bt = HT._data(k).betti
        return RationalMatrix.from_columns(cols, bt) if cols else RationalMatrix.zeros(bt, 0)

    def induced_quotient(self, k: int) -> RationalMatrix:
        """H^k(phi) computed on Z/B quotients directly (second route)."""
        S, T = self.source, self.target
        ZS = S.d_matrix(k).kernel()
        BS = S.d_matrix(k - 1).image() if k > 0 else []
        BT = T.d_matrix(k - 1).image() if k > 0 else []
        ZT = T.d_matrix(k).kernel()
        m = self.matrix(k)
        # rank of the induced map = dim(phi(Z_S) + B_T) - dim B_T, presented on a Z_S / B_S complement
        eb = EchelonBasis(S.dim(k))
        for b in BS:
            eb.add(b)
        srcs = [z for z in ZS if eb.add(z)]
        images = [m.apply(z) for z in srcs]
        ebt = EchelonBasis(T.dim(k))
        for b in BT:
            ebt.add(b)
        tgt = [z for z in ZT if ebt.add(z)]
        frame = RationalMatrix.from_columns(list(BT) + tgt, T.dim(k)) if T.dim(k) else None
        cols = []
        for v in images:
            sol = frame.solve(v) if frame is not None else ()
            cols.append(tuple(sol[len(BT):]) if sol else ())
        return RationalMatrix.from_columns(cols, len(tgt)) if cols else RationalMatrix.zeros(len(tgt), 0)

    @staticmethod
    def identity(A: TableDGA) -> "DGAMorphism":
        cap = A.cap
        return DGAMorphism(A, A, {k: RationalMatrix.identity(A.dim(k)) for k in range(cap + 1)}, validate=False)

    def compose(self, other: "DGAMorphism") -> "DGAMorphism":
        """self ∘ other."""
        if other.target is not self.source:
            raise ValueError("morphisms are not composable")
        cap = min(self.cap, other.cap)
        return DGAMorphism(other.source, self.target, {k: self.maps[k] @ other.maps[k] for k in range(cap + 1)})


def _common_cap(S: TableDGA, T: TableDGA) -> int:
    """Largest degree where a map S -> T is meaningful (finite algebras vanish above their cap)."""
    bounded = [X.cap for X in (S, T) if not X.finite]
    return min(bounded) if bounded else max(S.cap, T.cap)


@dataclass
class QEquivalenceReport:
    q: int
    ok: bool
    failures: list = field(default_factory=list)
    ranks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def q_equivalence(phi: DGAMorphism, q: int) -> QEquivalenceReport:
    """H^i(phi) bijective for i <= q and injective for i = q + 1."""
    for X in (phi.source, phi.target):
        if X.cap < q + 2 and not X.finite:
            raise CapExceeded(f"q-equivalence at q={q} needs cap >= {q + 2} on {X.name}")
    HS = cohomology(phi.source, q + 1)
    HT = cohomology(phi.target, q + 1)
    failures, ranks = [], {}
    for i in range(q + 2):
        m = phi.induced(i, HS, HT)
        r = m.rank()
        bs, bt = HS.betti[i], HT.betti[i]
        ranks[i] = (r, bs, bt)
        if r < bs:
            failures.append((i, "not injective", {"rank": r, "source": bs, "target": bt}))
        if i <= q and r < bt:
            failures.append((i, "not surjective", {"rank": r, "source": bs, "target": bt}))
    return QEquivalenceReport(q, not failures, failures, ranks)


# ---------------------------------------------------------------------------
# truncations


def _sub_table(A: TableDGA, top: int):
    labels = [A.labels(k) for k in range(top + 1)]
    mult = {(i, j): A._mult[(i, j)] for i in range(top + 1) for j in range(top + 1 - i)}
    diff = [A.d_matrix(k) for k in range(top)]
    weights = None if A.weights is None else A.weights[: top + 1]
    return labels, mult, diff, weights


def truncate(A: TableDGA, q: int) -> TableDGA:
    """The quotient A / (A^{>q+1}); finite with cap q + 1.

    Products landing in degree q + 1 are kept; everything above is zero.
    """
    if q + 1 > A.cap:
        raise CapExceeded(f"truncation at q={q} needs cap >= {q + 1}")
    labels, mult, diff, weights = _sub_table(A, q + 1)
    return TableDGA(f"{A.name}[<={q + 1}]", q + 1, labels, mult, diff, weights, finite=True)


def projection_morphism(A: TableDGA, Q: TableDGA, top_matrix: RationalMatrix | None = None, top: int | None = None) -> DGAMorphism:
    """The map from A onto a truncation Q sharing its low-degree bases."""
    maps = {}
    for k in range(Q.cap + 1):
        if top is not None and k == top and top_matrix is not None:
            maps[k] = top_matrix
        elif k <= Q.cap:
            maps[k] = RationalMatrix.identity(A.dim(k)) if Q.dim(k) == A.dim(k) else RationalMatrix.zeros(Q.dim(k), A.dim(k))
    return DGAMorphism(A, Q, maps)


def modified_truncation(A: TableDGA, q: int) -> tuple[TableDGA, DGAMorphism]:
    """A[q+1]: split A^{q+1} = Z^{q+1} + U and divide by U and A^{>q+1}.

    U is spanned by standard basis vectors completing the cocycles.
    """
    top = q + 1
    if top > A.cap - 1 and not A.finite:
        raise CapExceeded(f"modified truncation at q={q} needs cap >= {q + 2}")
    n = A.dim(top)
    Z = A.d_matrix(top).kernel()
    U = complement_basis(Z, n)
    frame = RationalMatrix.from_columns(list(Z) + U, n) if n else RationalMatrix.zeros(0, 0)
    inv = frame.inverse() if n else frame
    proj = RationalMatrix(inv.rows[: len(Z)], n)  # coordinates along Z, killing U
    top_labels = []
    orig = A.labels(top)
    for i, z in enumerate(Z):
        nz = [r for r, x in enumerate(z) if x]
        if len(nz) == 1 and z[nz[0]] == 1:
            top_labels.append(orig[nz[0]])
        else:
            top_labels.append(f"z{top}_{i}")
    labels = [A.labels(k) for k in range(top)] + [top_labels]
    mult = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if i + j < top:
                mult[(i, j)] = A._mult[(i, j)]
                continue
            # products landing in degree top, then projected
            rows = []
            for a in range(len(labels[i])):
                row = []
                for b in range(len(labels[j])):
                    if i == 0:
                        row.append({b: ONE})
                    elif j == 0:
                        row.append({a: ONE})
                    else:
                        v = A.mul_vec(i, unit_vec(A.dim(i), a), j, unit_vec(A.dim(j), b))
                        p = proj.apply(v)
                        row.append({r: x for r, x in enumerate(p) if x})
                rows.append(row)
            mult[(i, j)] = rows
    diff = [A.d_matrix(k) for k in range(top - 1)]
    if top >= 1:
        diff.append(proj @ A.d_matrix(top - 1))
    Q = TableDGA(f"{A.name}[{top}]", top, labels, mult, diff, None, finite=True)
    phi = projection_morphism(A, Q, proj, top)
    return Q, phi


def modified_truncate(A: TableDGA, q: int) -> TableDGA:
    """A[q+1], checked to induce isomorphisms on H^i for i <= q + 1."""
    Q, phi = modified_truncation(A, q)
    HS = cohomology(A, q + 1)
    HQ = cohomology(Q, q + 1)
    for i in range(q + 2):
        m = phi.induced(i, HS, HQ)
        if not (HS.betti[i] == HQ.betti[i] == m.rank()):
            raise DGAError(f"modified truncation is not a cohomology isomorphism in degree {i}")
    return Q


# ---------------------------------------------------------------------------
# Massey products


@dataclass
class MasseyResult:
    representative: Element
    class_vector: tuple
    indeterminacy: list  # basis of the indeterminacy subspace, in H coordinates
    vanishes: bool
    x: Element = None
    y: Element = None

    @property
    def degree(self) -> int:
        return self.representative.degree


def massey_triple(A: TableDGA, a: Element, b: Element, c: Element) -> MasseyResult:
    """<a, b, c> = x*c - (-1)^|a| a*y with dx = ab, dy = bc."""
    for z in (a, b, c):
        if z.algebra is not A:
            raise ValueError("elements belong to another algebra")
    N = a.degree + b.degree + c.degree - 1
    if N > A.cap - 1 and not A.finite:
        raise CapExceeded(f"Massey product lands in degree {N}, needs cap >= {N + 1}")
    H = cohomology(A, N)
    for z, name in ((a, "a"), (b, "b"), (c, "c")):
        if not H.is_cocycle(z):
            raise NotCocycle(f"{name} is not closed")
    ab, bc = a * b, b * c
    x, y = H.primitive(ab), H.primitive(bc)
    if x is None:
        raise ProductNotExact("[a][b] is not zero in cohomology")
    if y is None:
        raise ProductNotExact("[b][c] is not zero in cohomology")
    sign = -1 if a.degree % 2 else 1
    rep = x * c - sign * (a * y)
    cls = H.class_of(rep)
    p, r = b.degree + c.degree - 1, a.degree + b.degree - 1
    ua, uc = H.class_of(a), H.class_of(c)
    gens = []
    for k in range(H._data(p).betti):
        gens.append(H.multiply_classes(a.degree, ua, p, unit_vec(H._data(p).betti, k)))
    for k in range(H._data(r).betti):
        gens.append(H.multiply_classes(r, unit_vec(H._data(r).betti, k), c.degree, uc))
    bN = H._data(N).betti
    eb = EchelonBasis(bN)
    indet = [g for g in gens if eb.add(g)]
    vanishes = eb.contains(cls) if bN else True
    return MasseyResult(rep, cls, indet, vanishes, x, y)
