"""Regular sequences in graded algebras with zero differential, and the formality certificate they give."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Element, TableDGA
from .cohomology import DGAMorphism, QEquivalenceReport, _common_cap, q_equivalence
from .errors import CapExceeded, NotZeroDifferential, OddDegreeElement
from .hirsch import HirschData, hirsch_extend
from .linalg import ONE, ZERO, EchelonBasis, RationalMatrix, complement_basis, unit_vec


def _require_zero_d(H: TableDGA):
    if not H.is_zero_differential():
        raise NotZeroDifferential(f"{H.name} has a nonzero differential")


def _as_element(H: TableDGA, e) -> Element:
    if isinstance(e, str):
        return H.parse(e)
    if e.algebra is not H:
        raise ValueError("element belongs to another algebra")
    return e


def quotient_by_ideal(H: TableDGA, elems: Sequence, name: str | None = None) -> tuple[TableDGA, DGAMorphism]:
    """H / Σ e H together with the projection; the quotient keeps the labels of a standard complement."""
    _require_zero_d(H)
    elems = [_as_element(H, e) for e in elems]
    cap = H.cap
    labels, projs = [], []
    for k in range(cap + 1):
        n = H.dim(k)
        span = EchelonBasis(n)
        gens = []
        for e in elems:
            j = k - e.degree
            if j < 0 or e.is_zero():
                continue
            for b in range(H.dim(j)):
                v = H.mul_vec(e.degree, e.coords, j, unit_vec(H.dim(j), b))
                if span.add(v):
                    gens.append(v)
        comp = complement_basis(gens, n)
        frame = RationalMatrix.from_columns(gens + comp, n) if n else RationalMatrix.zeros(0, 0)
        inv = frame.inverse() if n else frame
        projs.append(RationalMatrix(inv.rows[len(gens):], n))
        labels.append([H.labels(k)[next(i for i, x in enumerate(c) if x)] for c in comp])
    mult = {}
    for i in range(cap + 1):
        for j in range(cap + 1 - i):
            li, lj = labels[i], labels[j]
            idx_i = [H.index_of(l)[1] for l in li]
            idx_j = [H.index_of(l)[1] for l in lj]
            table = []
            for a in idx_i:
                row = []
                for b in idx_j:
                    v = H.mul_vec(i, unit_vec(H.dim(i), a), j, unit_vec(H.dim(j), b))
                    p = projs[i + j].apply(v)
                    row.append({r: x for r, x in enumerate(p) if x})
                table.append(row)
            mult[(i, j)] = table
    diff = [RationalMatrix.zeros(len(labels[k + 1]), len(labels[k])) for k in range(cap)]
    weights = None
    if H.weights is not None:
        weights = [[H.weights[k][H.index_of(l)[1]] for l in ls] for k, ls in enumerate(labels)]
    Q = TableDGA(name or f"{H.name}/I", cap, labels, mult, diff, weights, H.finite)
    proj = DGAMorphism(H, Q, {k: projs[k] for k in range(cap + 1)})
    return Q, proj


def is_nzd_up_to(H: TableDGA, e, q: int) -> tuple[bool, Element | None]:
    """Whether e· : H^i -> H^(i+|e|) is injective for all i <= q; else the first kernel vector."""
    _require_zero_d(H)
    e = _as_element(H, e)
    if q < 0:
        return True, None
    if q == 0:
        # e· on H^0 = k is injective exactly when e is nonzero
        return (not e.is_zero(), None if not e.is_zero() else H.unit())
    if q + e.degree > H.cap and not H.finite:
        raise CapExceeded(f"non-zero-divisor test up to {q} for degree {e.degree} needs cap >= {q + e.degree}")
    for i in range(q + 1):
        if H.dim(i) == 0:
            continue
        ker = H.mult_matrix(e.degree, e.coords, i).kernel()
        if ker:
            return False, Element(H, i, ker[0])
    return True, None


@dataclass
class RegularityReport:
    sequence: list
    degrees: list
    q: int
    verdict: bool
    failure: tuple | None = None  # (index, degree, witness in the stage quotient)
    stages: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict


def is_q_regular(H: TableDGA, seq: Sequence, q: int) -> RegularityReport:
    """Each e_α is a non-zero-divisor up to degree q - n_α + 2 modulo e_1, ..., e_(α-1)."""
    _require_zero_d(H)
    seq = [_as_element(H, e) for e in seq]
    for a, e in enumerate(seq):
        if e.degree % 2:
            raise OddDegreeElement(f"element {a} has odd degree {e.degree}")
    degrees = [e.degree for e in seq]
    stages = []
    Q, proj = H, DGAMorphism.identity(H)
    for a, e in enumerate(seq):
        if a:
            Q, proj = quotient_by_ideal(H, seq[:a], f"{H.name}/({a})")
        stages.append(Q)
        bound = q - e.degree + 2
        ok, wit = is_nzd_up_to(Q, proj(e), bound)
        if not ok:
            return RegularityReport(seq, degrees, q, False, (a, wit.degree, wit), stages)
    return RegularityReport(seq, degrees, q, True, None, stages)


@dataclass
class FormalityCertificate:
    extension: TableDGA
    quotient: TableDGA
    psi: DGAMorphism
    q: int
    verified: bool
    report: QEquivalenceReport

    def __bool__(self):
        return self.verified


def _gen_names(seq: Sequence[Element]) -> list[str]:
    names = [f"t{e.degree - 1}" for e in seq]
    if len(set(names)) != len(names):
        names = [f"t{e.degree - 1}_{a + 1}" for a, e in enumerate(seq)]
    return names


def formality_certificate(H: TableDGA, seq: Sequence, q: int, names: Sequence[str] | None = None) -> FormalityCertificate:
    """Build H ⊗ Λ(t_α), dt_α = e_α, and check ψ: t_α ↦ 0 onto H/(e) is a q-equivalence."""
    _require_zero_d(H)
    seq = [_as_element(H, e) for e in seq]
    for a, e in enumerate(seq):
        if e.degree % 2:
            raise OddDegreeElement(f"element {a} has odd degree {e.degree}")
    names = list(names) if names else _gen_names(seq)
    h = HirschData(H, [(n, e.degree - 1) for n, e in zip(names, seq)], dict(zip(names, seq)), None if H.finite else H.cap)
    ext, _ = hirsch_extend(h)
    Q, proj = quotient_by_ideal(H, seq, f"{H.name}/({', '.join(names)})")
    info = ext.hirsch
    maps = {}
    for k in range(_common_cap(ext, Q) + 1):
        cols = []
        for bd, bi, ts in info.factors[k] if k < len(info.factors) else []:
            if ts:
                cols.append((ZERO,) * Q.dim(k))
            else:
                cols.append(proj.matrix(k).col(bi))
        maps[k] = RationalMatrix.from_columns(cols, Q.dim(k)) if cols else RationalMatrix.zeros(Q.dim(k), 0)
    psi = DGAMorphism(ext, Q, maps)
    rep = q_equivalence(psi, q)
    return FormalityCertificate(ext, Q, psi, q, rep.ok, rep)
