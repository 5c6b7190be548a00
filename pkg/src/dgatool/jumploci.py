"""Flat connections with values in small Lie algebras, twisted complexes and resonance.

A flat connection is ω = Σ_k η_k ⊗ g_k in A^1 ⊗ g, stored as the matrix of
coefficients (rows: basis of A^1, columns: basis of g). The Lie algebras act
on V = Q^2 through 2x2 matrices, except ``abelian1`` which acts on Q by
scalars.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import TableDGA, factor_embeddings, tensor_product
from .errors import NotFlat, NotPD, ShapeMismatch, StratumViolation
from .linalg import ONE, ZERO, RationalMatrix, vec, zero_vec


# ---------------------------------------------------------------------------
# small Lie algebras


def _m(rows) -> RationalMatrix:
    return RationalMatrix(rows)


@dataclass(frozen=True)
class SmallLieAlgebra:
    name: str
    labels: tuple
    basis: tuple  # matrices acting on V

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rep_dim(self) -> int:
        return self.basis[0].nrows

    def theta(self, coords: Sequence) -> RationalMatrix:
        out = RationalMatrix.zeros(self.rep_dim, self.rep_dim)
        for c, b in zip(vec(coords), self.basis):
            if c:
                out = out + b.scale(c)
        return out

    @cached_property
    def _flat_basis(self) -> RationalMatrix:
        return RationalMatrix.from_columns([sum((r for r in b.rows), ()) for b in self.basis], self.rep_dim**2)

    def coords_of(self, m: RationalMatrix) -> tuple:
        sol = self._flat_basis.solve(sum((r for r in m.rows), ()))
        if sol is None:
            raise ValueError(f"matrix is not in {self.name}")
        return sol

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        X, Y = self.theta(x), self.theta(y)
        return self.coords_of(X @ Y - Y @ X)

    @cached_property
    def structure_constants(self) -> list:
        """c[i][j] = coordinates of [g_i, g_j]."""
        n = self.dim
        units = [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]
        return [[self.bracket(units[i], units[j]) for j in range(n)] for i in range(n)]

    def to_gl2(self, coords: Sequence) -> tuple:
        """Coordinates in gl2 (E11, E12, E21, E22) of an element; abelian1 maps to scalars."""
        m = self.theta(coords)
        if self.rep_dim == 1:
            return (m[0, 0], ZERO, ZERO, m[0, 0])
        return (m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def det(self, coords: Sequence) -> Fraction:
        return self.theta(coords).det()


H_ = _m([[1, 0], [0, -1]])
E_ = _m([[0, 1], [0, 0]])
F_ = _m([[0, 0], [1, 0]])

LIE_ALGEBRAS = {
    "abelian1": SmallLieAlgebra("abelian1", ("1",), (_m([[1]]),)),
    "borel2": SmallLieAlgebra("borel2", ("H", "E"), (H_, E_)),
    "sl2": SmallLieAlgebra("sl2", ("H", "E", "F"), (H_, E_, F_)),
    "gl2": SmallLieAlgebra(
        "gl2", ("E11", "E12", "E21", "E22"), (_m([[1, 0], [0, 0]]), E_, F_, _m([[0, 0], [0, 1]]))
    ),
}


def lie_algebra(name) -> SmallLieAlgebra:
    if isinstance(name, SmallLieAlgebra):
        return name
    try:
        return LIE_ALGEBRAS[name]
    except KeyError:
        raise ValueError(f"unknown Lie algebra {name!r}; choose from {sorted(LIE_ALGEBRAS)}") from None


# ---------------------------------------------------------------------------
# flat connections


class FlatConnection:
    """ω = Σ_k η_k ⊗ g_k with η_k the k-th column of ``coeffs``."""

    def __init__(self, algebra: TableDGA, lie, coeffs):
        self.algebra = algebra
        self.lie = lie_algebra(lie)
        if not isinstance(coeffs, RationalMatrix):
            coeffs = RationalMatrix(coeffs, self.lie.dim)
        if coeffs.shape != (algebra.dim(1), self.lie.dim):
            raise ShapeMismatch(f"coefficients have shape {coeffs.shape}, expected {(algebra.dim(1), self.lie.dim)}")
        self.coeffs = coeffs

    def __repr__(self):
        return f"FlatConnection({self.algebra.name}, {self.lie.name}, {self.coeffs.rows})"

    def __eq__(self, other):
        return (
            isinstance(other, FlatConnection)
            and other.algebra is self.algebra
            and other.lie == self.lie
            and other.coeffs == self.coeffs
        )

    def eta(self, k: int) -> tuple:
        return self.coeffs.col(k)

    def __neg__(self):
        return FlatConnection(self.algebra, self.lie, -self.coeffs)

    def __add__(self, other):
        if other.lie != self.lie or other.algebra is not self.algebra:
            raise ShapeMismatch("connections live in different spaces")
        return FlatConnection(self.algebra, self.lie, self.coeffs + other.coeffs)

    def to_gl2(self) -> "FlatConnection":
        if self.lie.name == "gl2":
            return self
        rows = [
            tuple(sum((c * x for c, x in zip(row, col)), ZERO) for col in zip(*[self.lie.to_gl2(u) for u in _units(self.lie.dim)]))
            for row in self.coeffs.rows
        ]
        return FlatConnection(self.algebra, "gl2", RationalMatrix(rows, 4))

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def to_json(self) -> dict:
        from .linalg import frac_str

        return {"lie": self.lie.name, "coeffs": [[frac_str(x) for x in r] for r in self.coeffs.rows]}

    @classmethod
    def from_json(cls, algebra: TableDGA, data: dict) -> "FlatConnection":
        lie = lie_algebra(data["lie"])
        return cls(algebra, lie, RationalMatrix.from_json(data["coeffs"], lie.dim))


def _units(n):
    return [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]


def curvature(omega: FlatConnection) -> list[tuple]:
    """Components of dω + ½[ω, ω] in A^2 ⊗ g, one A^2 vector per basis element of g."""
    A, L = omega.algebra, omega.lie
    A.require(2, "flatness")
    n2 = A.dim(2)
    d1 = A.d_matrix(1)
    out = [list(d1.apply(omega.eta(m))) for m in range(L.dim)]
    c = L.structure_constants
    etas = [omega.eta(k) for k in range(L.dim)]
    for k in range(L.dim):
        for l in range(k + 1, L.dim):
            br = c[k][l]
            if not any(br):
                continue
            prod = A.mul_vec(1, etas[k], 1, etas[l])
            if not any(prod):
                continue
            for m, x in enumerate(br):
                if x:
                    for r in range(n2):
                        out[m][r] += x * prod[r]
    return [tuple(v) for v in out]


def is_flat(omega: FlatConnection) -> bool:
    return all(not any(v) for v in curvature(omega))


class CovariantComplex:
    """Matrices of d_ω on A^i ⊗ V: d ⊗ 1 + Σ_k L(η_k) ⊗ θ(g_k)."""

    def __init__(self, omega: FlatConnection, check: bool = True):
        if not is_flat(omega):
            raise NotFlat("connection is not flat")
        self.omega = omega
        A, L = omega.algebra, omega.lie
        self.top = A.cap if A.finite else A.cap - 1
        self.rep_dim = L.rep_dim
        self._thetas = [L.basis[k] for k in range(L.dim)]
        self._mats: dict = {}
        self.check = check

    def matrix(self, i: int) -> RationalMatrix:
        """d_ω : A^i ⊗ V -> A^(i+1) ⊗ V (index of a_r ⊗ v_p is r * dim V + p)."""
        if i not in self._mats:
            A = self.omega.algebra
            I = RationalMatrix.identity(self.rep_dim)
            D = A.d_matrix(i).kron(I)
            for k, th in enumerate(self._thetas):
                eta = self.omega.eta(k)
                if any(eta) and A.dim(i + 1) and A.dim(i):
                    D = D + A.mult_matrix(1, eta, i).kron(th)
            self._mats[i] = D
        return self._mats[i]

    def dims(self, upto: int) -> list[int]:
        A = self.omega.algebra
        if upto > self.top:
            A.require(upto + 1, "twisted cohomology")
        out = []
        for i in range(upto + 1):
            Di = self.matrix(i)
            ker = A.dim(i) * self.rep_dim - Di.rank()
            im = self.matrix(i - 1).rank() if i > 0 else 0
            if self.check and i > 0 and Di.nrows and Di.ncols and self.matrix(i - 1).ncols:
                if not (Di @ self.matrix(i - 1)).is_zero():
                    raise NotFlat(f"d_ω squares to a nonzero map in degree {i - 1}")
            out.append(ker - im)
        return out


def covariant_complex(omega: FlatConnection, upto: int | None = None) -> list[RationalMatrix]:
    cc = CovariantComplex(omega)
    top = cc.top if upto is None else upto
    mats = [cc.matrix(i) for i in range(top + 1)]
    for i in range(len(mats) - 1):
        if mats[i].ncols and mats[i + 1].nrows and not (mats[i + 1] @ mats[i]).is_zero():
            raise NotFlat(f"d_ω squares to a nonzero map in degree {i}")
    return mats


@dataclass
class ResonanceReport:
    omega: FlatConnection
    dims: list
    memberships: dict = field(default_factory=dict)

    def member(self, i: int, s: int) -> bool:
        """ω ∈ R^i_s, i.e. dim H^i(A ⊗ V, d_ω) >= s."""
        r = self.dims[i] >= s
        self.memberships[(i, s)] = r
        return r


def resonance_dims(omega: FlatConnection, upto: int | None = None, queries: Sequence = ()) -> ResonanceReport:
    cc = CovariantComplex(omega)
    upto = cc.top if upto is None else upto
    dims = cc.dims(upto)
    A = omega.algebra
    if A.finite and upto >= A.top_degree:
        euler = sum((-1) ** i * x for i, x in enumerate(dims))
        expect = cc.rep_dim * sum((-1) ** i * A.dim(i) for i in range(A.top_degree + 1))
        if euler != expect:
            raise AssertionError(f"Euler characteristic {euler} differs from {expect}")
    rep = ResonanceReport(omega, dims)
    for i, s in queries:
        rep.member(i, s)
    return rep


# ---------------------------------------------------------------------------
# strata


def _rank_one_factor(omega: FlatConnection):
    """(η, g) with coeffs = η gᵀ, or None when rank > 1; (None, None) for ω = 0."""
    M = omega.coeffs
    r = M.rank()
    if r == 0:
        return None, None
    if r > 1:
        return None
    row = next(i for i in range(M.nrows) if any(M.row(i)))
    g = M.row(row)
    piv = next(k for k, x in enumerate(g) if x)
    eta = tuple(M[i, piv] / g[piv] for i in range(M.nrows))
    return eta, g


def in_F1(omega: FlatConnection) -> bool:
    f = _rank_one_factor(omega)
    if f is None:
        return False
    eta, g = f
    if eta is None:
        return True
    return not any(omega.algebra.d_vec(1, eta))


def in_Pi(omega: FlatConnection) -> bool:
    if not in_F1(omega):
        return False
    eta, g = _rank_one_factor(omega)
    if eta is None:
        return True
    return omega.lie.det(g) == 0


def _hirsch_info(A: TableDGA):
    info = getattr(A, "hirsch", None)
    if info is None:
        raise ValueError(f"{A.name} is not a Hirsch extension built by this package")
    return info


def base_part(omega: FlatConnection) -> tuple[FlatConnection, bool]:
    """(η restricted to the base, whether the generator part η' vanishes)."""
    A = omega.algebra
    info = _hirsch_info(A)
    B = info.base
    rows = [list(zero_vec(omega.lie.dim)) for _ in range(B.dim(1))]
    pure = True
    for idx, (bd, bi, ts) in enumerate(info.factors[1]):
        row = omega.coeffs.row(idx)
        if ts:
            if any(row):
                pure = False
        else:
            rows[bi] = list(row)
    return FlatConnection(B, omega.lie, RationalMatrix(rows, omega.lie.dim)), pure


def pullback(omega_base: FlatConnection, A: TableDGA) -> FlatConnection:
    """Pull a connection on the base of the extension A back to A."""
    info = _hirsch_info(A)
    rows = []
    for bd, bi, ts in info.factors[1]:
        rows.append(zero_vec(omega_base.lie.dim) if ts else omega_base.coeffs.row(bi))
    return FlatConnection(A, omega_base.lie, RationalMatrix(rows, omega_base.lie.dim))


def is_pullback(omega: FlatConnection) -> bool:
    eta, pure = base_part(omega)
    return pure and is_flat(eta)


def classify_flat(omega: FlatConnection) -> str:
    """'F1', 'pullback' or 'both' for a flat connection on a Hirsch extension, with g inside sl2."""
    if omega.lie.name not in ("abelian1", "borel2", "sl2"):
        raise ValueError("classification needs a Lie algebra inside sl2")
    if not is_flat(omega):
        raise NotFlat("connection is not flat")
    f1 = in_F1(omega)
    pb = is_pullback(omega)
    if f1 and pb:
        return "both"
    if f1:
        return "F1"
    if pb:
        return "pullback"
    raise StratumViolation(f"flat connection is neither trivial nor a pullback: {omega.coeffs.rows}")


def sigma(omega: FlatConnection) -> FlatConnection:
    """σ(η ⊗ g) = -η ⊗ gᵀ; on abelian1 this is -ω."""
    if omega.lie.name == "abelian1":
        return -omega
    w = omega.to_gl2()
    rows = [(-r[0], -r[2], -r[1], -r[3]) for r in w.coeffs.rows]
    return FlatConnection(omega.algebra, "gl2", RationalMatrix(rows, 4))


# ---------------------------------------------------------------------------
# twisted Poincaré duality


@dataclass
class TwistedPDReport:
    n: int
    dims: list
    dual_dims: list
    dims_match: bool
    square_checks: int = 0
    square_failures: int = 0

    @property
    def ok(self) -> bool:
        return self.dims_match and self.square_failures == 0

    def __bool__(self):
        return self.ok


def _pairing_matrix(A: TableDGA, n: int, j: int, rep_dim: int, top_index: int = 0) -> RationalMatrix:
    """P on (A^j ⊗ V*) x (A^(n-j) ⊗ V): ε(x y) <φ, u>."""
    rows = []
    for r in range(A.dim(j)):
        for p in range(rep_dim):
            row = []
            for s in range(A.dim(n - j)):
                e = A.mul_basis(j, r, n - j, s).get(top_index, ZERO)
                for q in range(rep_dim):
                    row.append(e if p == q else ZERO)
            rows.append(tuple(row))
    return RationalMatrix(rows, A.dim(n - j) * rep_dim)


def twisted_pd_check(A: TableDGA, omega: FlatConnection, n: int, square_samples: int = 0, seed: int = 0) -> TwistedPDReport:
    """dim H^i(A ⊗ V, d_ω) = dim H^(n-i)(A ⊗ V*, d_σ(ω)) for i = 0..n, and the pairing square."""
    from .pd import pd_check

    cert = pd_check(A, n)
    if not cert.isPDCDGA:
        raise NotPD(f"{A.name} is not an {n}-PD-CDGA")
    if not is_flat(omega):
        raise NotFlat("connection is not flat")
    w = omega if omega.lie.name == "abelian1" else omega.to_gl2()
    sw = sigma(w)
    cw, cs = CovariantComplex(w), CovariantComplex(sw)
    dims = cw.dims(n)
    dual = cs.dims(n)
    match = all(dims[i] == dual[n - i] for i in range(n + 1))
    rep = TwistedPDReport(n, dims, dual, match)
    if square_samples:
        rng = random.Random(seed)
        V = w.lie.rep_dim
        degs = [i for i in range(n) if A.dim(n - i - 1) and A.dim(i)]
        for t in range(square_samples):
            i = degs[t % len(degs)]
            j = n - i - 1
            x = tuple(random_rational(rng) for _ in range(A.dim(j) * V))
            y = tuple(random_rational(rng) for _ in range(A.dim(i) * V))
            # P(d_σω x, y) with d_σω x in A^(n-i) ⊗ V*, y in A^i ⊗ V
            lhs_vec = cs.matrix(j).apply(x)
            P1 = _pairing_matrix(A, n, n - i, V, cert.topClassIndex)
            lhs = sum((a * b for a, b in zip(lhs_vec, P1.apply(y))), ZERO)
            rhs_vec = cw.matrix(i).apply(y)
            P2 = _pairing_matrix(A, n, j, V, cert.topClassIndex)
            rhs = sum((a * b for a, b in zip(x, P2.apply(rhs_vec))), ZERO)
            sign = -1 if (n - i) % 2 else 1
            rep.square_checks += 1
            if lhs != sign * rhs:
                rep.square_failures += 1
    return rep


# ---------------------------------------------------------------------------
# sampling


def random_rational(rng: random.Random) -> Fraction:
    """Numerator uniform in [-9, 9], denominator uniform in [1, 9]."""
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_nonzero_rational(rng: random.Random) -> Fraction:
    while True:
        x = random_rational(rng)
        if x:
            return x


def random_vector(rng: random.Random, n: int) -> tuple:
    return tuple(random_rational(rng) for _ in range(n))


def closed_one_forms(A: TableDGA) -> list[tuple]:
    return A.d_matrix(1).kernel()


def random_closed_one_form(A: TableDGA, rng: random.Random, nonzero: bool = True) -> tuple:
    Z = closed_one_forms(A)
    n = A.dim(1)
    if not Z:
        return zero_vec(n)
    while True:
        cs = random_vector(rng, len(Z))
        v = tuple(sum((c * z[r] for c, z in zip(cs, Z)), ZERO) for r in range(n))
        if any(v) or not nonzero:
            return v


def _outer(eta: Sequence, g: Sequence) -> RationalMatrix:
    return RationalMatrix([tuple(e * x for x in g) for e in eta], len(g))


def sample_trivial(A: TableDGA, lie, rng: random.Random) -> FlatConnection:
    """A point of the rank-one stratum: closed η times a random g."""
    L = lie_algebra(lie)
    eta = random_closed_one_form(A, rng)
    g = random_vector(rng, L.dim)
    if not any(g):
        g = (ONE,) + g[1:]
    return FlatConnection(A, L, _outer(eta, g))


def _flatness_system(B: TableDGA, L: SmallLieAlgebra, rows: list):
    """Flatness with the last row unknown: (M, const) with M x + const = 0 in A^2 ⊗ g."""
    n1, n2, dl = B.dim(1), B.dim(2), L.dim
    const = [ZERO] * (n2 * dl)
    for k in range(n1 - 1):
        for l in range(k + 1, n1 - 1):
            prod = B.mul_basis(1, k, 1, l)
            if not prod:
                continue
            br = L.bracket(rows[k], rows[l])
            for r, x in prod.items():
                for m, y in enumerate(br):
                    const[r * dl + m] += x * y
    cols = []
    for j in range(dl):
        col = [ZERO] * (n2 * dl)
        for k in range(n1 - 1):
            prod = B.mul_basis(1, k, 1, n1 - 1)
            if not prod:
                continue
            br = c_row_bracket(L, rows[k], j)
            for r, x in prod.items():
                for m, y in enumerate(br):
                    col[r * dl + m] += x * y
        cols.append(col)
    return RationalMatrix.from_columns(cols, n2 * dl), const


def sample_flat_on_zero_d(B: TableDGA, lie, rng: random.Random, attempts: int = 20) -> FlatConnection:
    """Flat connection on an algebra with d = 0 on A^1.

    All coefficients but the last are random and the last solves the
    remaining flatness equation, which is linear in it. When that system is
    inconsistent, the partner of the last generator is first made
    trace-orthogonal to the obstruction (the image of ad is the trace
    orthogonal of the centralizer in sl2 and gl2).
    """
    L = lie_algebra(lie)
    n1, n2, dl = B.dim(1), B.dim(2), L.dim
    if n1 == 0:
        return FlatConnection(B, L, RationalMatrix.zeros(0, dl))
    partners = [k for k in range(n1 - 1) if B.mul_basis(1, k, 1, n1 - 1)]
    for _ in range(attempts):
        rows = [list(random_vector(rng, dl)) for _ in range(n1 - 1)]
        M, const = _flatness_system(B, L, rows)
        sol = M.solve(tuple(-x for x in const))
        if sol is None and partners:
            p = partners[-1]
            funcs = []
            for r in range(n2):
                c = const[r * dl : (r + 1) * dl]
                if any(c):
                    Tc = L.theta(c)
                    funcs.append(tuple(_trace(L.basis[j] @ Tc) for j in range(dl)))
            ker = RationalMatrix(funcs, dl).kernel() if funcs else _units(dl)
            if not ker:
                continue
            ts = [random_rational(rng) for _ in ker]
            rows[p] = [sum((t * kv[j] for t, kv in zip(ts, ker)), ZERO) for j in range(dl)]
            M, const = _flatness_system(B, L, rows)
            sol = M.solve(tuple(-x for x in const))
        if sol is None:
            continue
        last = list(sol)
        for kv in M.kernel():
            t = random_rational(rng)
            last = [a + t * b for a, b in zip(last, kv)]
        rows.append(last)
        om = FlatConnection(B, L, RationalMatrix(rows, dl))
        if is_flat(om):
            return om
    # fall back to a commuting (rank-one) configuration
    g = random_vector(rng, dl)
    return FlatConnection(B, L, _outer(random_vector(rng, n1), g))


def _trace(m: RationalMatrix) -> Fraction:
    return sum((m[i, i] for i in range(m.nrows)), ZERO)


def c_row_bracket(L: SmallLieAlgebra, x: Sequence, j: int) -> tuple:
    """[x, g_j] in coordinates."""
    return L.bracket(x, _units(L.dim)[j])


def sample_pullback(A: TableDGA, lie, rng: random.Random) -> FlatConnection:
    info = _hirsch_info(A)
    return pullback(sample_flat_on_zero_d(info.base, lie, rng), A)


def sample_flat(A: TableDGA, lie, rng: random.Random, central: bool = False) -> FlatConnection:
    """Alternate between the two strata; for gl2 optionally add a central closed η0 ⊗ I."""
    L = lie_algebra(lie)
    if rng.random() < 0.5 or getattr(A, "hirsch", None) is None:
        om = sample_trivial(A, L, rng)
    else:
        om = sample_pullback(A, L, rng)
    if central and L.name == "gl2":
        eta0 = random_closed_one_form(A, rng, nonzero=False)
        om = om + FlatConnection(A, L, _outer(eta0, (ONE, ZERO, ZERO, ONE)))
    return om


def perturb(omega: FlatConnection, rng: random.Random) -> FlatConnection:
    """Add a random full coefficient matrix."""
    M = RationalMatrix([random_vector(rng, omega.lie.dim) for _ in range(omega.coeffs.nrows)], omega.lie.dim)
    return FlatConnection(omega.algebra, omega.lie, omega.coeffs + M)


# ---------------------------------------------------------------------------
# product formula and the resonance formula for link models


@dataclass
class SampleReport:
    samples: int = 0
    disagreements: int = 0
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.samples > 0 and self.disagreements == 0

    def __bool__(self):
        return self.ok


def _rank1(A: TableDGA, v: Sequence) -> FlatConnection:
    return FlatConnection(A, "abelian1", RationalMatrix([(x,) for x in v], 1))


def product_formula_check(A: TableDGA, B: TableDGA, q: int, samples: int = 100, seed: int = 0, T: TableDGA | None = None) -> SampleReport:
    """ω = (ω1, ω2) ∈ R^q_1(A ⊗ B) iff ω1 ∈ R^i_1(A) and ω2 ∈ R^j_1(B) for some i + j = q (rank one)."""
    rng = random.Random(seed)
    T = T or tensor_product(A, B)
    left, right = factor_embeddings(A, B, T)
    za, zb = A.dim(1), B.dim(1)
    points = [(zero_vec(za), zero_vec(zb))]
    first = random_closed_one_form(A, rng)
    second = random_closed_one_form(B, rng)
    points += [(first, zero_vec(zb)), (zero_vec(za), second), (first, second)]
    while len(points) < samples:
        w1 = random_closed_one_form(A, rng, nonzero=False)
        w2 = random_closed_one_form(B, rng, nonzero=False)
        mode = rng.randrange(4)
        if mode == 0:
            w1 = zero_vec(za)
        elif mode == 1:
            w2 = zero_vec(zb)
        points.append((w1, w2))
    rep = SampleReport()
    for w1, w2 in points[:samples]:
        t = tuple(x + y for x, y in zip(left(1, w1), right(1, w2)))
        dT = resonance_dims(_rank1(T, t), q).dims
        dA = resonance_dims(_rank1(A, w1), q).dims
        dB = resonance_dims(_rank1(B, w2), q).dims
        lhs = dT[q] >= 1
        rhs = any(dA[i] >= 1 and dB[q - i] >= 1 for i in range(q + 1))
        rep.samples += 1
        if lhs != rhs:
            rep.disagreements += 1
            rep.details.append((w1, w2, dT[q], dA, dB))
    return rep


def resonance_formula_check(A: TableDGA, lie, samples: int = 100, seed: int = 0) -> SampleReport:
    """On a link model: genus 1, ω ∈ R^1_1 iff ω ∈ Π; higher genus, iff ω ∈ Π or ω is a pullback."""
    L = lie_algebra(lie)
    info = _hirsch_info(A)
    genus = info.base.dim(1) // 2
    rng = random.Random(seed)
    pts = [FlatConnection(A, L, RationalMatrix.zeros(A.dim(1), L.dim))]
    eta = random_closed_one_form(A, rng)
    nil = (ZERO, ONE) + (ZERO,) * (L.dim - 2)  # E
    semi = (ONE,) + (ZERO,) * (L.dim - 1)  # H
    pts += [FlatConnection(A, L, _outer(eta, nil)), FlatConnection(A, L, _outer(eta, semi))]
    while len(pts) < samples:
        pts.append(sample_flat(A, L, rng))
    rep = SampleReport()
    for om in pts[:samples]:
        member = resonance_dims(om, 1).dims[1] >= 1
        if genus == 1:
            expect = in_Pi(om)
        else:
            expect = in_Pi(om) or classify_flat(om) in ("pullback", "both")
        rep.samples += 1
        if member != expect:
            rep.disagreements += 1
            rep.details.append(om.coeffs.rows)
    return rep
