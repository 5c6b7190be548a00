"""Named models and their expected-value tables.

Every builder returns a validated TableDGA. Entries pair a builder with
checks whose expected values are frozen here; ``verify_entry`` recomputes
them. The ``why`` string on each check says how the value is known.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .algebra import Element, TableDGA, build_table_dga, verify_positive_weights
from .cohomology import betti_numbers, massey_triple
from .hirsch import HirschData, extend, hirsch_extend
from .holonomy import holonomy_presentation, lcs_dims
from .pd import pd_check
from .regularity import is_q_regular
from .sullivan import SullivanModel, realize_sullivan

# ---------------------------------------------------------------------------
# builders


def surface_algebra(g: int) -> TableDGA:
    """Cohomology of a closed genus-g surface with d = 0: a_i b_i = w, all other products of degree-one classes vanish."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    ones = [x for i in range(1, g + 1) for x in (f"a{i}", f"b{i}")]
    desc = {
        "name": f"surface{g}",
        "cap": 2,
        "basis": [["1"], ones, ["w"]],
        "mult": [{"left": f"a{i}", "right": f"b{i}", "result": {"w": 1}} for i in range(1, g + 1)],
        "diff": {},
        "weights": {"1": 0, "w": 2, **{x: 1 for x in ones}},
        "finite": True,
    }
    return build_table_dga(desc)


def torus_algebra(n: int) -> TableDGA:
    """Exterior algebra on a_1, b_1, ..., a_n, b_n (degree one, d = 0)."""
    gens = [(x, 1) for i in range(1, n + 1) for x in (f"a{i}", f"b{i}")]
    model = SullivanModel(gens, {}, max(2 * n, 1), f"torus{n}", {x: 1 for x, _ in gens})
    return realize_sullivan(model)


def kahler_class(A: TableDGA) -> Element:
    """h = a_1 b_1 + ... + a_n b_n."""
    n = A.dim(1) // 2
    return A.parse(" + ".join(f"a{i}*b{i}" for i in range(1, n + 1)), 2)


def orientation_class(A: TableDGA) -> Element:
    return A.basis_element("w")


def tievsky_model(H: TableDGA, h: Element, name: str | None = None, gen: str = "t") -> TableDGA:
    """H ⊗ Λ(t) with |t| = 1 and dt = h; t inherits the weight of h."""
    return hirsch_extend(HirschData(H, [(gen, 1)], {gen: h}, None, name))[0]


def heisenberg_model(n: int) -> TableDGA:
    T = torus_algebra(n)
    return tievsky_model(T, kahler_class(T), f"heis{n}")


def link_model(g: int) -> TableDGA:
    S = surface_algebra(g)
    return tievsky_model(S, orientation_class(S), f"link{g}")


def polynomial_ring(cap: int = 22) -> TableDGA:
    """Q[x6, x10] up to degree ``cap``."""
    model = SullivanModel([("x6", 6), ("x10", 10)], {}, cap, "poly", {"x6": 6, "x10": 10})
    return realize_sullivan(model)


SP5_SEQUENCE = ("x6^2", "x10^2", "x6*x10")


def sp5_su5_model(cap: int = 22) -> TableDGA:
    """Q[x6, x10] ⊗ Λ(t11, t15, t19) with dt11 = x6^2, dt15 = x6 x10, dt19 = x10^2."""
    P = polynomial_ring(cap)
    tau = {"t11": "x6^2", "t15": "x6*x10", "t19": "x10^2"}
    return extend(P, [("t11", 11), ("t15", 15), ("t19", 19)], tau, cap, "sp5su5")


def s2xs2_algebra() -> TableDGA:
    """Cohomology of S^2 x S^2: x y = w, x^2 = y^2 = 0."""
    desc = {
        "name": "s2xs2",
        "cap": 4,
        "basis": [["1"], [], ["x", "y"], [], ["w"]],
        "mult": [{"left": "x", "right": "y", "result": {"w": 1}}],
        "diff": {},
        "weights": {"1": 0, "x": 2, "y": 2, "w": 4},
        "finite": True,
    }
    return build_table_dga(desc)


def hopf_s3_model() -> TableDGA:
    """H(S^2 x S^2) ⊗ Λ(t3) with dt3 = w."""
    B = s2xs2_algebra()
    return extend(B, [("t3", 3)], {"t3": "w"}, None, "hopf_s3")


def circle_model() -> TableDGA:
    return realize_sullivan(SullivanModel([("a", 1)], {}, 1, "circle", {"a": 1}))


def t2_double_extension() -> TableDGA:
    """T^2 ⊗ Λ(t, t') with dt = a1 b1 and dt' = 0."""
    T = torus_algebra(1)
    return extend(T, [("t", 1), ("t'", 1)], {"t": "a1*b1", "t'": "0"}, None, "t2_double")


# ---------------------------------------------------------------------------
# entries


@dataclass
class Check:
    name: str
    compute: Callable
    expected: object
    why: str


@dataclass
class CatalogEntry:
    key: str
    builder: Callable[[], TableDGA]
    anchor: str
    expected: list = field(default_factory=list)
    regular: tuple | None = None  # (base key, sequence) for regularity questions

    def build(self) -> TableDGA:
        return build(self.key)


def _betti(upto=None):
    return lambda A: tuple(betti_numbers(A, upto))


def _dims(A):
    return tuple(A.dims)


def _pd(n):
    return lambda A: pd_check(A, n).isPDCDGA


def _weights(A):
    return verify_positive_weights(A)[0]


def _regular(base_key, seq, q):
    def run(A):
        H = build(base_key)
        return is_q_regular(H, _resolve_seq(H, seq), q).verdict

    return run


def _lcs(depth):
    return lambda A: tuple(lcs_dims(holonomy_presentation(A), depth).dims)


def _massey_nonzero(a, b, c):
    def run(A):
        r = massey_triple(A, A.parse(a), A.parse(b), A.parse(c))
        return (not r.vanishes, len(r.indeterminacy))

    return run


def _h_squared_nonzero(A):
    h = kahler_class(A)
    return not (h * h).is_zero()


def _entries() -> list[CatalogEntry]:
    E = []
    add = E.append
    add(CatalogEntry("circle", circle_model, "exterior algebra on one degree-one class", [
        Check("dims", _dims, (1, 1), "one generator, exponent at most one"),
        Check("betti", _betti(), (1, 1), "d = 0"),
        Check("pd1", _pd(1), True, "a . 1 pairs degrees 0 and 1"),
        Check("weights", _weights, True, "weight equals degree"),
    ]))
    for g in (1, 2, 3):
        add(CatalogEntry(f"surface{g}", lambda g=g: surface_algebra(g), f"cohomology ring of a closed genus-{g} surface", [
            Check("dims", _dims, (1, 2 * g, 1), "symplectic basis plus unit and top class"),
            Check("pd2", _pd(2), True, "symplectic pairing"),
            Check("weights", _weights, True, "weight equals degree"),
            Check("lcs4", _lcs(4), {1: (2, 0, 0, 0), 2: (4, 5, 16, 45), 3: (6, 14, 64, 280)}[g],
                  "one quadratic relator; Labute product formula for 1 - 2g s + s^2"),
        ], ("surface%d" % g, ("w",))))
    for n in (1, 2, 3):
        exp = {1: (1, 2, 1), 2: (1, 4, 6, 4, 1), 3: (1, 6, 15, 20, 15, 6, 1)}[n]
        checks = [
            Check("betti", _betti(), exp, "binomial coefficients, d = 0"),
            Check(f"pd{2 * n}", _pd(2 * n), True, "exterior algebra on 2n classes"),
            Check("weights", _weights, True, "weight equals degree"),
            Check("lcs4", _lcs(4), (2 * n, 0, 0, 0), "all degree-one products independent, so the holonomy Lie algebra is abelian"),
        ]
        if n >= 2:
            checks.append(Check("h_squared_nonzero", _h_squared_nonzero, True, "h^2 = 2 a1 b1 a2 b2 + ..."))
        add(CatalogEntry(f"torus{n}", lambda n=n: torus_algebra(n), f"cohomology of the {2 * n}-torus with its Kahler class", checks,
                         (f"torus{n}", ("h",))))
    add(CatalogEntry("s2xs2", s2xs2_algebra, "cohomology of S^2 x S^2", [
        Check("dims", _dims, (1, 0, 2, 0, 1), "two degree-two classes with x y = w"),
        Check("pd4", _pd(4), True, "hyperbolic pairing on degree two"),
        Check("weights", _weights, True, "weight equals degree"),
        Check("regular3", _regular("s2xs2", ("w",), 3), True, "w . H^i is injective for i <= 1"),
        Check("regular4", _regular("s2xs2", ("w",), 4), False, "x w = 0 in degree six"),
    ], ("s2xs2", ("w",))))
    add(CatalogEntry("hopf_s3", hopf_s3_model, "S^3-bundle over S^2 x S^2 classified by the top class", [
        Check("betti", _betti(), (1, 0, 2, 0, 0, 2, 0, 1), "exact sequence of the extension by t3"),
        Check("pd7", _pd(7), True, "extension of a 4-dimensional duality algebra by a degree-three generator"),
        Check("weights", _weights, True, "wt(t3) = wt(w)"),
    ], ("s2xs2", ("w",))))
    add(CatalogEntry("poly", polynomial_ring, "polynomial ring on generators of degrees 6 and 10, capped at 22", [
        Check("dims", _dims, tuple(1 if k in (0, 6, 10, 12, 16, 18, 20, 22) else 0 for k in range(23)),
              "monomials x6^i x10^j with 6i + 10j = k"),
        Check("weights", _weights, True, "weight equals degree"),
    ]))
    sp5_betti = tuple(1 if k in (0, 6, 10, 21) else 0 for k in range(22))
    add(CatalogEntry("sp5su5", sp5_su5_model, "model of Sp(5)/SU(5) with odd generators killing x6^2, x6 x10, x10^2", [
        Check("betti", _betti(), sp5_betti, "x6 and x10 survive; x10 t11 - x6 t15 is the first odd class"),
        Check("regular19", _regular("poly", SP5_SEQUENCE, 19), True, "x6 x10 only needs to be a non-zero-divisor up to degree 5"),
        Check("regular20", _regular("poly", SP5_SEQUENCE, 20), False, "x6 . x6 x10 lies in (x6^2)"),
        Check("massey", _massey_nonzero("x6", "x6", "x10"), (True, 0), "H^11 and H^15 vanish, so the indeterminacy is zero"),
        Check("weights", _weights, True, "wt(t) = wt(dt)"),
    ], ("poly", SP5_SEQUENCE)))
    heis_betti = {1: (1, 2, 2, 1), 2: (1, 4, 5, 5, 4, 1), 3: (1, 6, 14, 14, 14, 14, 6, 1)}
    for n in (1, 2, 3):
        checks = [
            Check("betti", _betti(), heis_betti[n], "exact sequence with hard Lefschetz on the torus"),
            Check(f"pd{2 * n + 1}", _pd(2 * n + 1), True, "extension of a duality algebra by a degree-one generator"),
            Check("weights", _weights, True, "wt(t) = wt(h) = 2"),
            Check(f"regular{n - 1}", _regular(f"torus{n}", ("h",), n - 1), True, "h is injective on H^i for i <= n - 1"),
            Check(f"regular{n}", _regular(f"torus{n}", ("h",), n), False, "h^(n+1) = 0 on the torus"),
        ]
        if n == 1:
            checks.append(Check("massey", _massey_nonzero("a1", "a1", "b1"), (True, 0), "a1 t represents it; a1 . H^1 + H^1 . b1 = 0 since a1 b1 = dt"))
            checks.append(Check("lcs5", _lcs(5), (2, 1, 0, 0, 0), "free 2-step nilpotent Lie algebra on two generators"))
        add(CatalogEntry(f"heis{n}", lambda n=n: heisenberg_model(n), f"model of the {2 * n + 1}-dimensional Heisenberg nilmanifold",
                         checks, (f"torus{n}", ("h",))))
    for g in (1, 2, 3):
        add(CatalogEntry(f"link{g}", lambda g=g: link_model(g), f"circle bundle over the genus-{g} surface with Euler class w", [
            Check("betti", _betti(), (1, 2 * g, 2 * g, 1), "w kills H^0 and annihilates H^1"),
            Check("pd3", _pd(3), True, "extension of a surface by a degree-one generator"),
            Check("weights", _weights, True, "wt(t) = wt(w) = 2"),
        ], (f"surface{g}", ("w",))))
    add(CatalogEntry("t2_double", t2_double_extension, "T^2 extended by t, t' with dt = a1 b1 and dt' = 0", [
        Check("betti", _betti(), (1, 3, 4, 3, 1), "Heisenberg model times a circle"),
        Check("pd4", _pd(4), True, "extension of a duality algebra by two degree-one generators"),
    ], ("torus1", ("h", "0"))))
    return E


@lru_cache(maxsize=None)
def _catalog() -> dict:
    return {e.key: e for e in _entries()}


def catalog() -> dict:
    return dict(_catalog())


def entry(key: str) -> CatalogEntry:
    try:
        return _catalog()[key]
    except KeyError:
        raise KeyError(f"unknown catalog entry {key!r}") from None


@lru_cache(maxsize=None)
def build(key: str) -> TableDGA:
    return entry(key).builder()


def regular_target(key: str):
    """Base algebra and sequence used for regularity questions about ``key``."""
    e = entry(key)
    if e.regular is None:
        return None
    base_key, seq = e.regular
    H = build(base_key)
    return H, _resolve_seq(H, seq)


def _resolve_seq(H: TableDGA, seq) -> list:
    """``h`` is the Kahler class and ``0`` the zero class of degree two; anything else is parsed."""
    return [kahler_class(H) if s == "h" else H.zero(2) if s == "0" else H.parse(s) for s in seq]


def verify_entry(e: CatalogEntry) -> list[tuple]:
    """Recompute an entry's checks: (name, expected, actual, ok)."""
    A = e.build()
    out = []
    for c in e.expected:
        try:
            got = c.compute(A)
        except Exception as exc:  # reported, not raised
            got = f"error: {type(exc).__name__}: {exc}"
        out.append((c.name, c.expected, got, got == c.expected))
    return out


# elementary extensions used for the exact-sequence checks: (label, base key, τ)
ELEMENTARY_EXTENSIONS = (
    ("torus1+h", "torus1", "h"),
    ("torus2+h", "torus2", "h"),
    ("torus3+h", "torus3", "h"),
    ("surface2+w", "surface2", "w"),
    ("surface3+w", "surface3", "w"),
    ("s2xs2+w", "s2xs2", "w"),
    ("poly+x6^2", "poly", "x6^2"),
    ("circle+0", "circle", "0"),
)


def elementary_extension(label: str):
    """(base, τ element) for one of :data:`ELEMENTARY_EXTENSIONS`."""
    for lab, key, tau in ELEMENTARY_EXTENSIONS:
        if lab == label:
            H = build(key)
            if tau == "h":
                return H, kahler_class(H)
            if tau == "0":
                return H, H.zero(2)
            return H, H.parse(tau)
    raise KeyError(label)
