"""Degreewise-finite commutative differential graded algebras given by tables.

A :class:`TableDGA` stores, up to a degree cap, an ordered labelled basis in
each degree, sparse structure constants for every pair of degrees, and the
differential as one :class:`RationalMatrix` per degree (column ``j`` of
``d_matrix(k)`` is ``d`` of the ``j``-th basis element of degree ``k``).

An algebra flagged ``finite`` is declared to vanish above its cap; otherwise
anything that needs a degree beyond the cap raises :class:`CapExceeded`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import AxiomViolation, CapExceeded, MissingWeights
from .linalg import ONE, ZERO, RationalMatrix, frac_str, to_fraction, unit_vec, vec, zero_vec

Sparse = dict  # dict[int, Fraction]


def _sparse_add(acc: dict, vecd: Mapping, c=ONE):
    for k, x in vecd.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _clean(d: Mapping) -> dict:
    return {k: to_fraction(x) for k, x in d.items() if x}


class TableDGA:
    """A connected CDGA presented by explicit bases and structure constants.

    Instances are treated as immutable; all constructors validate the CDGA
    axioms unless ``validate=False`` is passed by trusted internal code.
    """

    def __init__(
        self,
        name: str,
        cap: int,
        labels: Sequence[Sequence[str]],
        mult: Mapping[tuple[int, int], Sequence[Sequence[Mapping[int, Fraction]]]],
        diff: Sequence[RationalMatrix],
        weights: Sequence[Sequence[int]] | None = None,
        finite: bool = False,
        validate: bool = True,
    ):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        if len(labels) != cap + 1:
            raise ValueError(f"expected bases for degrees 0..{cap}, got {len(labels)}")
        self.name = name
        self.cap = cap
        self.finite = bool(finite)
        self._labels = tuple(tuple(ls) for ls in labels)
        self._dims = tuple(len(ls) for ls in self._labels)
        self._index = {}
        for k, ls in enumerate(self._labels):
            for i, lab in enumerate(ls):
                if lab in self._index:
                    raise ValueError(f"duplicate basis label {lab!r}")
                self._index[lab] = (k, i)
        self._mult = {}
        for i in range(cap + 1):
            for j in range(cap + 1 - i):
                table = mult.get((i, j))
                di, dj = self._dims[i], self._dims[j]
                if table is None:
                    self._mult[(i, j)] = tuple(tuple({} for _ in range(dj)) for _ in range(di))
                    continue
                if len(table) != di or any(len(r) != dj for r in table):
                    raise ValueError(f"structure constants for degrees {(i, j)} have the wrong shape")
                self._mult[(i, j)] = tuple(tuple(_clean(e) for e in r) for r in table)
        if len(diff) != cap:
            raise ValueError(f"expected differentials for degrees 0..{cap - 1}, got {len(diff)}")
        self._diff = tuple(diff)
        for k, m in enumerate(self._diff):
            if m.shape != (self._dims[k + 1], self._dims[k]):
                raise ValueError(f"differential in degree {k} has shape {m.shape}")
        if weights is not None:
            weights = tuple(tuple(int(w) for w in ws) for ws in weights)
            if tuple(len(ws) for ws in weights) != self._dims:
                raise ValueError("weights must match the basis")
        self.weights = weights
        if validate:
            self.validate()

    # basic data -------------------------------------------------------
    def __repr__(self):
        return f"TableDGA({self.name!r}, cap={self.cap}, dims={self._dims}{', finite' if self.finite else ''})"

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    def has_degree(self, k: int) -> bool:
        return k >= 0 and (k <= self.cap or self.finite)

    def require(self, k: int, what: str = ""):
        if k > self.cap and not self.finite:
            raise CapExceeded(f"{self.name}: degree {k} needed{' for ' + what if what else ''} but cap is {self.cap}")

    def dim(self, k: int) -> int:
        if k < 0:
            return 0
        if k > self.cap:
            self.require(k)
            return 0
        return self._dims[k]

    def labels(self, k: int) -> tuple[str, ...]:
        if k > self.cap:
            self.require(k)
            return ()
        return self._labels[k]

    def index_of(self, label: str) -> tuple[int, int]:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{self.name} has no basis element {label!r}") from None

    @property
    def top_degree(self) -> int:
        """Largest stored degree with a nonzero piece."""
        return max(k for k, n in enumerate(self._dims) if n)

    # structure --------------------------------------------------------
    def mul_basis(self, i: int, a: int, j: int, b: int) -> dict:
        if i + j > self.cap:
            self.require(i + j, "a product")
            return {}
        return self._mult[(i, j)][a][b]

    def mul_vec(self, i: int, u: Sequence, j: int, v: Sequence) -> tuple:
        n = self.dim(i + j)
        if n == 0:
            return ()
        table = self._mult[(i, j)]
        acc: dict = {}
        vnz = [(b, y) for b, y in enumerate(v) if y]
        for a, x in enumerate(u):
            if not x:
                continue
            row = table[a]
            for b, y in vnz:
                e = row[b]
                if e:
                    _sparse_add(acc, e, x * y)
        out = [ZERO] * n
        for k, c in acc.items():
            out[k] = c
        return tuple(out)

    def d_matrix(self, k: int) -> RationalMatrix:
        """Matrix of d: A^k -> A^(k+1)."""
        if k < self.cap:
            return self._diff[k]
        self.require(k + 1, "the differential")
        return RationalMatrix.zeros(0, self.dim(k))

    def d_vec(self, k: int, v: Sequence) -> tuple:
        return self.d_matrix(k).apply(v)

    def mult_matrix(self, i: int, u: Sequence, j: int) -> RationalMatrix:
        """Matrix of left multiplication by ``u`` (in degree i) on A^j."""
        cols = [self.mul_vec(i, u, j, unit_vec(self.dim(j), b)) for b in range(self.dim(j))]
        return RationalMatrix.from_columns(cols, self.dim(i + j)) if cols else RationalMatrix.zeros(self.dim(i + j), 0)

    def is_zero_differential(self) -> bool:
        return all(m.is_zero() for m in self._diff)

    # elements ---------------------------------------------------------
    def element(self, degree: int, coords: Iterable) -> "Element":
        return Element(self, degree, vec(coords))

    def zero(self, degree: int) -> "Element":
        return Element(self, degree, zero_vec(self.dim(degree)))

    def unit(self) -> "Element":
        return Element(self, 0, (ONE,))

    def basis_element(self, label: str) -> "Element":
        k, i = self.index_of(label)
        return Element(self, k, unit_vec(self._dims[k], i))

    def basis(self, k: int) -> list["Element"]:
        return [Element(self, k, unit_vec(self.dim(k), i)) for i in range(self.dim(k))]

    def parse(self, text: str, degree: int | None = None) -> "Element":
        from .expr import parse_element

        return parse_element(self, text, degree)

    # validation -------------------------------------------------------
    def validate(self):
        """Exhaustively check the CDGA axioms up to the cap.

        Raises :class:`AxiomViolation` with the first failing basis tuple.
        """
        dims, cap, lab = self._dims, self.cap, self._labels
        if dims[0] != 1:
            raise AxiomViolation("unit", ("degree0",), f"dim A^0 = {dims[0]}, expected 1")
        for j in range(cap + 1):
            for b in range(dims[j]):
                want = {b: ONE}
                if self._mult[(0, j)][0][b] != want:
                    raise AxiomViolation("unit", (lab[0][0], lab[j][b]))
                if self._mult[(j, 0)][b][0] != want:
                    raise AxiomViolation("unit", (lab[j][b], lab[0][0]))
        if self._diff and not self._diff[0].is_zero():
            raise AxiomViolation("unit", (lab[0][0],), "d(1) must vanish")
        for i in range(1, cap + 1):
            for j in range(i, cap + 1 - i):
                sign = -ONE if (i * j) % 2 else ONE
                tij, tji = self._mult[(i, j)], self._mult[(j, i)]
                for a in range(dims[i]):
                    for b in range(dims[j]):
                        x = tij[a][b]
                        y = tji[b][a]
                        if x.keys() != y.keys() or any(x[k] != sign * y[k] for k in x):
                            raise AxiomViolation("commutativity", (lab[i][a], lab[j][b]))
        for i in range(1, cap + 1):
            for j in range(1, cap + 1 - i):
                tij = self._mult[(i, j)]
                for k in range(1, cap + 1 - i - j):
                    t_ij_k = self._mult[(i + j, k)]
                    t_jk = self._mult[(j, k)]
                    t_i_jk = self._mult[(i, j + k)]
                    for a in range(dims[i]):
                        for b in range(dims[j]):
                            ab = tij[a][b]
                            for c in range(dims[k]):
                                left: dict = {}
                                for m, x in ab.items():
                                    _sparse_add(left, t_ij_k[m][c], x)
                                right: dict = {}
                                for m, x in t_jk[b][c].items():
                                    _sparse_add(right, t_i_jk[a][m], x)
                                if left != right:
                                    raise AxiomViolation("associativity", (lab[i][a], lab[j][b], lab[k][c]))
        dcols = [m.columns() for m in self._diff]
        for k in range(cap - 1):
            if not (self._diff[k + 1] @ self._diff[k]).is_zero():
                col = next(c for c in range(dims[k]) if any((self._diff[k + 1] @ self._diff[k]).col(c)))
                raise AxiomViolation("d_squared", (lab[k][col],))
        for i in range(cap + 1):
            for j in range(cap + 1 - i):
                s = i + j
                if s + 1 > cap and not (self.finite and s == cap):
                    continue
                sign = -ONE if i % 2 else ONE
                for a in range(dims[i]):
                    for b in range(dims[j]):
                        ab = self._mult[(i, j)][a][b]
                        lhs = {}
                        if s < cap:
                            for m, x in ab.items():
                                _sparse_add(lhs, {r: y for r, y in enumerate(dcols[s][m]) if y}, x)
                        rhs: dict = {}
                        if s < cap:
                            for m, x in enumerate(dcols[i][a]) if i < cap else ():
                                if x:
                                    _sparse_add(rhs, self._mult[(i + 1, j)][m][b], x)
                            for m, x in enumerate(dcols[j][b]) if j < cap else ():
                                if x:
                                    _sparse_add(rhs, self._mult[(i, j + 1)][a][m], sign * x)
                        if lhs != rhs:
                            raise AxiomViolation("leibniz", (lab[i][a], lab[j][b]))

    # misc -------------------------------------------------------------
    def structurally_equal(self, other: "TableDGA") -> bool:
        """Same dims, structure constants and differential (labels ignored)."""
        return (
            self.cap == other.cap
            and self._dims == other._dims
            and self.finite == other.finite
            and self._mult == other._mult
            and self._diff == other._diff
        )

    def renamed(self, name: str) -> "TableDGA":
        return TableDGA(name, self.cap, self._labels, self._mult, self._diff, self.weights, self.finite, validate=False)

    def with_weights(self, weights) -> "TableDGA":
        return TableDGA(self.name, self.cap, self._labels, self._mult, self._diff, weights, self.finite, validate=False)

    def with_cap(self, cap: int) -> "TableDGA":
        """Pad a finite algebra with zero pieces, or cut any algebra down (non-finite result)."""
        if cap >= self.cap:
            if cap > self.cap and not self.finite:
                raise CapExceeded(f"cannot raise the cap of non-finite {self.name}")
            labels = list(self._labels) + [()] * (cap - self.cap)
            diff = list(self._diff) + [RationalMatrix.zeros(0, self._dims[self.cap])] + [
                RationalMatrix.zeros(0, 0)
            ] * (cap - self.cap - 1)
            diff = diff[:cap]
            weights = None if self.weights is None else list(self.weights) + [()] * (cap - self.cap)
            mult = dict(self._mult)
            return TableDGA(self.name, cap, labels, mult, diff, weights, True, validate=False)
        labels = self._labels[: cap + 1]
        mult = {k: v for k, v in self._mult.items() if k[0] + k[1] <= cap}
        weights = None if self.weights is None else self.weights[: cap + 1]
        return TableDGA(self.name, cap, labels, mult, self._diff[:cap], weights, False, validate=False)


class Element:
    """A homogeneous element of a :class:`TableDGA`."""

    __slots__ = ("algebra", "degree", "coords")

    def __init__(self, algebra: TableDGA, degree: int, coords: Sequence):
        coords = vec(coords)
        if len(coords) != algebra.dim(degree):
            raise ValueError(f"degree {degree} of {algebra.name} has dimension {algebra.dim(degree)}, got {len(coords)} coordinates")
        self.algebra = algebra
        self.degree = degree
        self.coords = coords

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")
        if other.degree != self.degree:
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        return Element(self.algebra, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, self.degree, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.algebra, self.degree, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = to_fraction(other)
        return Element(self.algebra, self.degree, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        c = to_fraction(other)
        return Element(self.algebra, self.degree, tuple(c * a for a in self.coords))

    def __pow__(self, n: int):
        out = self.algebra.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.algebra), self.degree, self.coords))

    def d(self) -> "Element":
        return Element(self.algebra, self.degree + 1, self.algebra.d_vec(self.degree, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_cocycle(self) -> bool:
        return self.d().is_zero()

    def __repr__(self):
        labels = self.algebra.labels(self.degree)
        terms = []
        for lab, c in zip(labels, self.coords):
            if not c:
                continue
            if c == 1:
                terms.append(lab)
            elif c == -1:
                terms.append(f"-{lab}")
            else:
                terms.append(f"{c}*{lab}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"<{body} in {self.algebra.name}^{self.degree}>"


def multiply(x: Element, y: Element) -> Element:
    """Product of two homogeneous elements of the same algebra."""
    if x.algebra is not y.algebra:
        raise ValueError("elements belong to different algebras")
    A = x.algebra
    k = x.degree + y.degree
    A.require(k, "a product")
    return Element(A, k, A.mul_vec(x.degree, x.coords, y.degree, y.coords))


# --------------------------------------------------------------------------
# building from a table description


def build_table_dga(desc: Mapping) -> TableDGA:
    """Build and validate a TableDGA from a plain table description.

    ``desc`` keys: ``name``, ``cap``, ``basis`` (list of label lists, one per
    degree), ``mult`` (list of ``{"left", "right", "result": {label: coeff}}``;
    an unlisted reversed pair is filled in by graded commutativity and unit
    products are implicit), ``diff`` (``{label: {label: coeff}}``), optional
    ``weights`` (``{label: int}``) and ``finite``.
    """
    name = desc.get("name", "A")
    basis = [list(ls) for ls in desc["basis"]]
    cap = int(desc.get("cap", len(basis) - 1))
    if len(basis) < cap + 1:
        basis += [[] for _ in range(cap + 1 - len(basis))]
    elif len(basis) > cap + 1:
        raise ValueError("basis lists degrees beyond the cap")
    dims = [len(ls) for ls in basis]
    index = {}
    for k, ls in enumerate(basis):
        for i, lab in enumerate(ls):
            index[lab] = (k, i)
    if dims[0] != 1:
        raise AxiomViolation("unit", ("degree0",), f"dim A^0 = {dims[0]}, expected 1")

    def sparse(k: int, entries: Mapping) -> dict:
        out = {}
        for lab, c in entries.items():
            kk, i = index[lab]
            if kk != k:
                raise ValueError(f"{lab!r} has degree {kk}, expected {k}")
            c = to_fraction(c)
            if c:
                out[i] = c
        return out

    mult = {(i, j): [[{} for _ in range(dims[j])] for _ in range(dims[i])] for i in range(cap + 1) for j in range(cap + 1 - i)}
    for j in range(cap + 1):
        for b in range(dims[j]):
            mult[(0, j)][0][b] = {b: ONE}
            mult[(j, 0)][b][0] = {b: ONE}
    given = set()
    for entry in desc.get("mult", []):
        (i, a), (j, b) = index[entry["left"]], index[entry["right"]]
        if i + j > cap:
            continue
        mult[(i, j)][a][b] = sparse(i + j, entry.get("result", entry.get("product", {})))
        given.add((i, a, j, b))
    for (i, a, j, b) in list(given):
        if (j, b, i, a) not in given:
            sign = -1 if (i * j) % 2 else 1
            mult[(j, i)][b][a] = {k: sign * c for k, c in mult[(i, j)][a][b].items()}
    diff_cols = {k: [zero_vec(dims[k + 1]) for _ in range(dims[k])] for k in range(cap)}
    for lab, image in desc.get("diff", {}).items():
        k, i = index[lab]
        if k >= cap:
            if any(to_fraction(c) for c in image.values()):
                raise ValueError(f"differential of top-degree element {lab!r} is outside the cap")
            continue
        v = [ZERO] * dims[k + 1]
        for m, c in sparse(k + 1, image).items():
            v[m] = c
        diff_cols[k][i] = tuple(v)
    diff = [RationalMatrix.from_columns(diff_cols[k], dims[k + 1]) if dims[k] else RationalMatrix.zeros(dims[k + 1], 0) for k in range(cap)]
    weights = None
    if desc.get("weights") is not None:
        w = desc["weights"]
        weights = [[int(w[lab]) for lab in ls] for ls in basis]
    return TableDGA(name, cap, basis, mult, diff, weights, bool(desc.get("finite", False)))


def table_description(A: TableDGA) -> dict:
    """Inverse of :func:`build_table_dga` (rationals as "p/q" strings)."""
    mult = []
    for (i, j), table in sorted(A._mult.items()):
        if i == 0 or j == 0:
            continue
        for a, row in enumerate(table):
            for b, e in enumerate(row):
                if e:
                    mult.append(
                        {
                            "left": A._labels[i][a],
                            "right": A._labels[j][b],
                            "result": {A._labels[i + j][k]: frac_str(c) for k, c in sorted(e.items())},
                        }
                    )
    diff = {}
    for k in range(A.cap):
        m = A._diff[k]
        for i in range(A._dims[k]):
            col = m.col(i)
            if any(col):
                diff[A._labels[k][i]] = {A._labels[k + 1][r]: frac_str(c) for r, c in enumerate(col) if c}
    out = {
        "kind": "table",
        "name": A.name,
        "cap": A.cap,
        "finite": A.finite,
        "basis": [list(ls) for ls in A._labels],
        "mult": mult,
        "diff": diff,
    }
    if A.weights is not None:
        out["weights"] = {lab: w for ls, ws in zip(A._labels, A.weights) for lab, w in zip(ls, ws)}
    return out


# --------------------------------------------------------------------------
# weights


def verify_positive_weights(A: TableDGA):
    """Check a positive-weight decomposition given by basis weights.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness names
    the failing condition and basis tuple.
    """
    if A.weights is None:
        raise MissingWeights(f"{A.name} carries no weights")
    W, lab = A.weights, A._labels
    for k in range(1, A.cap + 1):
        for i, w in enumerate(W[k]):
            if w <= 0:
                return False, ("positivity", (lab[k][i],))
    for k in range(A.cap):
        m = A._diff[k]
        for i in range(A._dims[k]):
            for r, c in enumerate(m.col(i)):
                if c and W[k + 1][r] != W[k][i]:
                    return False, ("differential", (lab[k][i], lab[k + 1][r]))
    for (i, j), table in A._mult.items():
        for a, row in enumerate(table):
            for b, e in enumerate(row):
                for m in e:
                    if W[i + j][m] != W[i][a] + W[j][b]:
                        return False, ("product", (lab[i][a], lab[j][b], lab[i + j][m]))
    return True, None


# --------------------------------------------------------------------------
# tensor products


def tensor_product(A: TableDGA, B: TableDGA, name: str | None = None) -> TableDGA:
    """Graded tensor product A ⊗ B with the Koszul sign rule."""
    if A.finite and B.finite:
        cap, finite = A.cap + B.cap, True
    else:
        cap = min(X.cap for X in (A, B) if not X.finite)
        finite = False
    suffix = _right_suffix(A, B)
    blocks = []  # per degree: list of (i, a, b)
    labels = []
    for k in range(cap + 1):
        bl, ls = [], []
        for i in range(k + 1):
            j = k - i
            if not (A.has_degree(i) and B.has_degree(j)):
                continue
            for a in range(A.dim(i)):
                for b in range(B.dim(j)):
                    bl.append((i, a, b))
                    la, lb = A._labels[i][a], B._labels[j][b]
                    if j == 0:
                        ls.append(la)
                    elif i == 0:
                        ls.append(lb + suffix)
                    else:
                        ls.append(f"{la}*{lb}{suffix}")
        blocks.append(bl)
        labels.append(ls)
    pos = [{blk: n for n, blk in enumerate(bl)} for bl in blocks]
    mult = {}
    for k1 in range(cap + 1):
        for k2 in range(cap + 1 - k1):
            table = []
            for (i, a, b) in blocks[k1]:
                row = []
                j = k1 - i
                for (i2, a2, b2) in blocks[k2]:
                    j2 = k2 - i2
                    sign = -ONE if (j * i2) % 2 else ONE
                    pa = A.mul_basis(i, a, i2, a2)
                    pb = B.mul_basis(j, b, j2, b2)
                    e = {}
                    for m, x in pa.items():
                        for n, y in pb.items():
                            e[pos[k1 + k2][(i + i2, m, n)]] = sign * x * y
                    row.append(e)
                table.append(row)
            mult[(k1, k2)] = table
    diff = []
    for k in range(cap):
        cols = []
        for (i, a, b) in blocks[k]:
            j = k - i
            v = [ZERO] * len(blocks[k + 1])
            for m, x in enumerate(A.d_matrix(i).col(a)):
                if x:
                    v[pos[k + 1][(i + 1, m, b)]] += x
            sign = -ONE if i % 2 else ONE
            for n, y in enumerate(B.d_matrix(j).col(b)):
                if y:
                    v[pos[k + 1][(i, a, n)]] += sign * y
            cols.append(tuple(v))
        diff.append(RationalMatrix.from_columns(cols, len(blocks[k + 1])) if cols else RationalMatrix.zeros(len(blocks[k + 1]), 0))
    weights = None
    if A.weights is not None and B.weights is not None:
        weights = [[A.weights[i][a] + B.weights[k - i][b] for (i, a, b) in bl] for k, bl in enumerate(blocks)]
    return TableDGA(name or f"{A.name}⊗{B.name}", cap, labels, mult, diff, weights, finite)


def _right_suffix(A: TableDGA, B: TableDGA) -> str:
    blabels = {lab for ls in B._labels[1:] for lab in ls}
    alabels = {lab for ls in A._labels for lab in ls}
    return "'" if blabels & alabels else ""


def factor_embeddings(A: TableDGA, B: TableDGA, T: TableDGA):
    """Coordinate maps a -> a⊗1 and b -> 1⊗b into ``T = tensor_product(A, B)``."""
    suffix = _right_suffix(A, B)

    def embed_left(k: int, coords: Sequence) -> tuple:
        out = [ZERO] * T.dim(k)
        for a, x in enumerate(coords):
            if x:
                out[T.index_of(A._labels[k][a])[1]] = x
        return tuple(out)

    def embed_right(k: int, coords: Sequence) -> tuple:
        out = [ZERO] * T.dim(k)
        for b, y in enumerate(coords):
            if y:
                lab = B._labels[k][b] + suffix if k else T._labels[0][0]
                out[T.index_of(lab)[1]] = y
        return tuple(out)

    return embed_left, embed_right
