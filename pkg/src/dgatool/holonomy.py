"""Holonomy Lie algebras of CDGAs, elimination of transgressed generators, and LCS dimensions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import TableDGA
from .errors import BasisSplitInvalid, DepthGuardExceeded, NonHomogeneousPresentation, NotZeroDifferential
from .hirsch import HirschData
from .linalg import EchelonBasis, RationalMatrix, complement_basis, frac_str, rref_rows
from .lie import (
    SparseEchelon,
    add_into,
    bracket,
    from_lyndon,
    gen,
    homogeneous_parts,
    lyndon_words,
    relabel,
    substitute,
    to_lyndon,
    witt,
)

MAX_GENERATORS = 10
MAX_DEPTH = 6


@dataclass
class LieRelator:
    degree: int
    coords: dict  # Lyndon word -> Fraction

    def tensor(self) -> dict:
        return from_lyndon(self.coords)

    def vector(self, n: int) -> tuple:
        """Coordinates over lyndon_words(n, degree)."""
        return tuple(Fraction(self.coords.get(w, 0)) for w in lyndon_words(n, self.degree))


@dataclass
class LiePresentation:
    generators: list  # names, all of degree one
    relators: list = field(default_factory=list)
    kinds: list = field(default_factory=list)  # optional tag per relator

    @property
    def n(self) -> int:
        return len(self.generators)

    def add(self, p: dict, kind: str = ""):
        """Add a homogeneous Lie polynomial given in tensor form (zero is skipped)."""
        if not p:
            return
        parts = homogeneous_parts(p)
        if len(parts) != 1:
            raise NonHomogeneousPresentation(f"relator has components in degrees {sorted(parts)}")
        (deg, q), = parts.items()
        self.relators.append(LieRelator(deg, to_lyndon(q)))
        self.kinds.append(kind)

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g, "degree": 1} for g in self.generators],
            "relators": [
                {"degree": r.degree, "lyndonCoords": [frac_str(x) for x in r.vector(self.n)], "kind": k}
                for r, k in zip(self.relators, self.kinds)
            ],
        }

    def word_label(self, w: tuple) -> str:
        def rec(u):
            if len(u) == 1:
                return self.generators[u[0]]
            from .lie import standard_factorization

            a, b = standard_factorization(u)
            return f"[{rec(a)},{rec(b)}]"

        return rec(w)

    def describe(self) -> list[str]:
        out = []
        for r in self.relators:
            terms = []
            for w, c in sorted(r.coords.items()):
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(f"{coef}{self.word_label(w)}")
            out.append(" + ".join(terms).replace("+ -", "- "))
        return out


def relation_degree_profile(p: LiePresentation) -> list[int]:
    return sorted(r.degree for r in p.relators)


@dataclass
class LcsTable:
    dims: list  # dims[k-1] = dim L_k
    free: list
    ideal_ranks: list


def lcs_dims(p: LiePresentation, depth: int, max_generators: int = MAX_GENERATORS, max_depth: int = MAX_DEPTH) -> LcsTable:
    """Graded dimensions of the free Lie algebra modulo the ideal of the relators, degrees 1..depth.

    The degree-k part of the ideal is R_k + Σ_i [x_i, I_(k-1)].
    """
    n = p.n
    if n > max_generators or depth > max_depth:
        raise DepthGuardExceeded(f"{n} generators to depth {depth} exceeds the guard ({max_generators}, {max_depth})")
    by_degree: dict = {}
    for r in p.relators:
        by_degree.setdefault(r.degree, []).append(r.tensor())
    prev: list = []
    dims, free, ranks = [], [], []
    for k in range(1, depth + 1):
        ech = SparseEchelon()
        for r in by_degree.get(k, []):
            ech.add(r)
        for f in prev:
            for i in range(n):
                ech.add(bracket(gen(i), f))
        prev = ech.basis()
        w = witt(n, k)
        free.append(w)
        ranks.append(len(ech))
        dims.append(w - len(ech))
    return LcsTable(dims, free, ranks)


def free_presentation(names: Sequence[str]) -> LiePresentation:
    return LiePresentation(list(names))


# ---------------------------------------------------------------------------


def _cup_star(A: TableDGA, xi: Sequence) -> dict:
    """Tensor form of ∪*(ξ) for ξ in (A^2)^*: Σ_{i<j} <ξ, a_i a_j> [x_i, x_j]."""
    n1 = A.dim(1)
    out: dict = {}
    for i in range(n1):
        for j in range(i + 1, n1):
            prod = A.mul_basis(1, i, 1, j)
            c = sum((xi[r] * x for r, x in prod.items()), Fraction(0))
            if c:
                add_into(out, bracket(gen(i), gen(j)), c)
    return out


def holonomy_presentation(A: TableDGA, max_rounds: int = 12) -> LiePresentation:
    """Presentation of the holonomy Lie algebra with linear relators eliminated.

    Relators are d*(ξ) + ∪*(ξ) for ξ in the dual basis of A^2. Linear parts
    are put in reduced echelon form; each pivot generator is solved for and
    substituted away until no pivot letter remains.
    """
    A.require(2, "the holonomy Lie algebra")
    n1, n2 = A.dim(1), A.dim(2)
    dmat = A.d_matrix(1)  # A^1 -> A^2
    relators = []
    for r in range(n2):
        xi = [Fraction(0)] * n2
        xi[r] = Fraction(1)
        lin = {(i,): dmat[r, i] for i in range(n1) if dmat[r, i]}
        q = _cup_star(A, xi)
        p = dict(lin)
        add_into(p, q)
        relators.append(p)
    # echelonize the linear parts
    lin_rows = [tuple(p.get((i,), Fraction(0)) for i in range(n1)) for p in relators]
    # track which combination of relators produces each echelon row
    aug = [tuple(lin_rows[r]) + tuple(Fraction(int(r == s)) for s in range(len(relators))) for r in range(len(relators))]
    red, piv = rref_rows(aug, n1 + len(relators))
    combos = []
    for row, c in zip(red, piv):
        combo = {}
        for s in range(len(relators)):
            x = row[n1 + s]
            if x:
                add_into(combo, relators[s], x)
        combos.append((c if c < n1 else None, combo))
    solved = {}
    others = []
    for c, combo in combos:
        if c is None:
            others.append(combo)
        else:
            # combo = x_c + (other linear) + quadratic = 0  =>  x_c = -(rest)
            rest = {w: -v for w, v in combo.items() if w != (c,)}
            solved[c] = rest
    for _ in range(max_rounds):
        changed = False
        for c in list(solved):
            new = substitute(solved[c], solved)
            if new != solved[c]:
                solved[c] = new
                changed = True
        if not changed:
            break
    if any(any(x in solved for x in w) for p in solved.values() for w in p):
        raise NonHomogeneousPresentation("linear relators could not be eliminated")
    keep = [i for i in range(n1) if i not in solved]
    mapping = {old: new for new, old in enumerate(keep)}
    labels = A.labels(1)
    pres = LiePresentation([f"{labels[i]}*" for i in keep])
    basis = {}
    for p in others:
        q = substitute(p, solved)
        if q:
            parts = homogeneous_parts(q)
            if len(parts) != 1:
                raise NonHomogeneousPresentation(f"relator has components in degrees {sorted(parts)}")
            q = relabel(q, mapping)
            (deg, _), = parts.items()
            ech = basis.setdefault(deg, SparseEchelon())
            if ech.add(q):
                pres.add(q, "holonomy")
    return pres


# ---------------------------------------------------------------------------


def eliminate_s_generators(h: HirschData, include_redundant: bool = False) -> LiePresentation:
    """Presentation of the holonomy Lie algebra of a degree-one Hirsch extension of (H, d=0).

    Generators h_i* (dual to H^1) and t_α* for τ(t_α) = 0; relators of type
    (I) v_γ, (II) [t*, t*], (III) [h*, t*], (IV) [h*, u_β], optionally also
    the redundant (V) [t*, u_β] and (VI) [u_β, u_β'].
    """
    H = h.base
    if not H.is_zero_differential():
        raise NotZeroDifferential(f"{H.name} has a nonzero differential")
    for n, m in h.generators:
        if m != 1:
            raise ValueError(f"generator {n} has degree {m}; elimination needs degree-one generators")
    n1, n2 = H.dim(1), H.dim(2)
    hit = [(n, h.tau[n].coords) for n, _ in h.generators if not h.tau[n].is_zero()]
    free_t = [n for n, _ in h.generators if h.tau[n].is_zero()]
    eb = EchelonBasis(n2)
    for n, v in hit:
        if not eb.add(v):
            raise BasisSplitInvalid(f"τ({n}) is linearly dependent on earlier transgressions")
    e_vecs = [v for _, v in hit]
    f_vecs = complement_basis(e_vecs, n2)
    frame = RationalMatrix.from_columns(e_vecs + f_vecs, n2) if n2 else RationalMatrix.zeros(0, 0)
    dual = frame.inverse() if n2 else frame  # row r is the dual functional of frame column r
    hl = H.labels(1)
    names = [f"{l}*" for l in hl] + [f"{t}*" for t in free_t]
    pres = LiePresentation(names)
    tidx = {t: n1 + k for k, t in enumerate(free_t)}
    u = [_cup_star(H, dual.row(b)) for b in range(len(e_vecs))]
    for g in range(len(f_vecs)):
        pres.add(_cup_star(H, dual.row(len(e_vecs) + g)), "I")
    for a in range(len(free_t)):
        for b in range(a + 1, len(free_t)):
            pres.add(bracket(gen(tidx[free_t[a]]), gen(tidx[free_t[b]])), "II")
    for i in range(n1):
        for t in free_t:
            pres.add(bracket(gen(i), gen(tidx[t])), "III")
    for i in range(n1):
        for ub in u:
            pres.add(bracket(gen(i), ub), "IV")
    if include_redundant:
        for t in free_t:
            for ub in u:
                pres.add(bracket(gen(tidx[t]), ub), "V")
        for a in range(len(u)):
            for b in range(a + 1, len(u)):
                pres.add(bracket(u[a], u[b]), "VI")
    return pres
