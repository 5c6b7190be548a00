"""Exact linear algebra over the rationals.

Everything in dgatool bottoms out here: ranks, kernels, images, solves and
inverses of :class:`RationalMatrix`. Entries are :class:`fractions.Fraction`;
elimination is delegated to the fraction-free integer kernel in ``_kernel``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from ._kernel import echelon

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use exact rationals")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence) -> bool:
    return not any(v)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        m = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x.numerator * (m // x.denominator)) for x in r])
    return out


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    """RREF of a list of rational rows: (nonzero rows as Fraction tuples, pivots)."""
    ints, pivots = echelon(_integer_rows(rows), ncols)
    out = []
    for r, c in zip(ints, pivots):
        p = r[c]
        out.append(tuple(Fraction(x, p) for x in r))
    return out, pivots


def span_rank(vectors: Sequence[Sequence], n: int) -> int:
    if not vectors:
        return 0
    ints, pivots = echelon(_integer_rows([vec(v) for v in vectors]), n)
    return len(pivots)


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self._rows = tuple(vec(r) for r in rows)
        self.nrows = len(self._rows)
        if ncols is None:
            if not self._rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(self._rows[0])
        self.ncols = ncols
        for r in self._rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([zero_vec(ncols)] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([unit_vec(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        cols = [vec(c) for c in cols]
        return cls([tuple(c[i] for c in cols) for i in range(nrows)], len(cols))

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"

    def is_zero(self) -> bool:
        return all(not any(r) for r in self._rows)

    # arithmetic -------------------------------------------------------
    @cached_property
    def T(self) -> "RationalMatrix":
        return RationalMatrix([self.col(j) for j in range(self.ncols)], self.nrows)

    def transpose(self) -> "RationalMatrix":
        return self.T

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix([vadd(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix([vsub(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([tuple(-x for x in r) for r in self._rows], self.ncols)

    def scale(self, c) -> "RationalMatrix":
        return RationalMatrix([vscale(c, r) for r in self._rows], self.ncols)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T._rows
        return RationalMatrix(
            [tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols) for r in self._rows],
            other.ncols,
        )

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for matrix {self.shape}")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((r[j] * x for j, x in nz), ZERO) for r in self._rows)

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        rows = []
        for r in self._rows:
            for s in other._rows:
                rows.append(tuple(a * b for a in r for b in s))
        return RationalMatrix(rows, self.ncols * other.ncols)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack row mismatch")
        return RationalMatrix([a + b for a, b in zip(self._rows, other._rows)], self.ncols + other.ncols)

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.ncols:
            raise ValueError("vstack column mismatch")
        return RationalMatrix(self._rows + other._rows, self.ncols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # elimination ------------------------------------------------------
    @cached_property
    def _rref(self):
        return rref_rows(self._rows, self.ncols)

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        rows, pivots = self._rref
        rows = list(rows) + [zero_vec(self.ncols)] * (self.nrows - len(rows))
        return RationalMatrix(rows, self.ncols), list(pivots)

    def rank(self) -> int:
        return len(self._rref[1])

    def kernel(self) -> list[Vector]:
        """Basis of the null space, one vector per free column, in column order."""
        rows, pivots = self._rref
        pivset = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [ZERO] * self.ncols
            v[f] = ONE
            for r, p in zip(rows, pivots):
                if r[f]:
                    v[p] = -r[f]
            basis.append(tuple(v))
        return basis

    def image(self) -> list[Vector]:
        """Basis of the column space: the pivot columns of the matrix itself."""
        return [self.col(p) for p in self._rref[1]]

    def solve(self, b: Sequence) -> Vector | None:
        """One solution x of self @ x = b (free variables zero), or None."""
        b = vec(b)
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        aug = [r + (x,) for r, x in zip(self._rows, b)]
        rows, pivots = rref_rows(aug, self.ncols + 1)
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [ZERO] * self.ncols
        for r, p in zip(rows, pivots):
            x[p] = r[-1]
        return tuple(x)

    def inverse(self) -> "RationalMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [r + unit_vec(n, i) for i, r in enumerate(self._rows)]
        rows, pivots = rref_rows(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) != n:
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix([r[n:] for r in rows], n)

    def det(self) -> Fraction:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self._rows]
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return d

    # serialization ----------------------------------------------------
    def to_json(self) -> list[list[str]]:
        return [[frac_str(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data, ncols: int | None = None) -> "RationalMatrix":
        return cls([[to_fraction(x) for x in r] for r in data], ncols)


def frac_str(x: Fraction) -> str:
    x = to_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def complement_basis(vectors: Sequence[Sequence], n: int) -> list[Vector]:
    """Standard basis vectors completing ``vectors`` (assumed independent) to a basis."""
    if not vectors:
        return [unit_vec(n, i) for i in range(n)]
    _, pivots = rref_rows([vec(v) for v in vectors], n)
    piv = set(pivots)
    return [unit_vec(n, i) for i in range(n) if i not in piv]


class EchelonBasis:
    """Incrementally grown subspace basis supporting membership tests.

    Vectors are kept in reduced echelon form with unit pivots so that
    reduction of a candidate is a single pass.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = list(vec(v))
        for r, p in zip(self._rows, self._pivots):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, r)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        c = w[p]
        w = [x / c for x in w]
        for k, r in enumerate(self._rows):
            if r[p]:
                f = r[p]
                self._rows[k] = [a - f * b for a, b in zip(r, w)]
        self._rows.append(w)
        self._pivots.append(p)
        return True
