import pytest
from hypothesis import given, settings, strategies as st

from dgatool import catalog as cat
from dgatool.cohomology import betti_numbers, cohomology, q_equivalence
from dgatool.errors import CapExceeded, ClassesDiffer, DegreeMismatch, EvenGeneratorDegree, NotCocycle
from dgatool.hirsch import HirschData, elementary_les_check, extend, hirsch_extend, les_betti, tau_homotopy_iso

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=2)


def test_heisenberg_is_extension_of_surface():
    A = cat.build("heis1")
    assert A.hirsch.base.name == "torus1"
    assert A.labels(1) == ("a1", "b1", "t")
    assert A.finite and A.cap == 3


def test_default_cap_finite_and_non_finite():
    S = cat.build("surface2")
    assert extend(S, [("t", 1)], {"t": "w"}).cap == 3
    P = cat.build("poly")
    assert extend(P, [("t", 11)], {"t": "x6^2"}).cap == 22
    with pytest.raises(CapExceeded):
        extend(P, [("t", 11)], {"t": "x6^2"}, cap=30)


def test_no_generators_leaves_base_untouched():
    S = cat.build("surface1")
    E, inc = hirsch_extend(HirschData(S, [], {}, None, "copy"))
    assert E is not S and E.name == "copy" and S.name == "surface1"
    assert getattr(S, "hirsch", None) is None or S.hirsch.base is S


def test_multi_generator_equals_iterated():
    T = cat.build("torus1")
    both = extend(T, [("s", 1), ("u", 3)], {"s": "a1*b1", "u": T.zero(4)})
    first = extend(T, [("s", 1)], {"s": "a1*b1"})
    step = extend(first, [("u", 3)], {"u": first.zero(4)})
    assert both.cap == step.cap == 6
    assert both.dims == step.dims
    assert betti_numbers(both) == betti_numbers(step) == (1, 2, 2, 2, 2, 2, 1)


@pytest.mark.parametrize("label", [lab for lab, _, _ in cat.ELEMENTARY_EXTENSIONS])
def test_elementary_extension_exact(label):
    H, e = cat.elementary_extension(label)
    upto = H.top_degree + e.degree - 1 if H.finite else 20
    rep = elementary_les_check(H, e, upto)
    assert rep.exact, [n for n in rep.nodes if not n.exact]
    assert rep.betti_extension == rep.betti_predicted


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_les_betti_matches_random_torus_extension(data):
    A = cat.build("torus2")
    e = A.element(2, [data.draw(coeff) for _ in range(A.dim(2))])
    E = extend(A, [("t", 1)], {"t": e})
    assert betti_numbers(E) == les_betti(A, e, E.top_degree)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_les_betti_matches_random_s2xs2_extension(data):
    A = cat.build("s2xs2")
    m = data.draw(st.sampled_from([1, 3]))
    e = A.element(m + 1, [data.draw(coeff) for _ in range(A.dim(m + 1))])
    E = extend(A, [("t", m)], {"t": e})
    assert betti_numbers(E) == les_betti(A, e, E.top_degree)


# tau errors ---------------------------------------------------------------

def test_even_generator_rejected():
    with pytest.raises(EvenGeneratorDegree):
        extend(cat.build("torus2"), [("t", 2)], {"t": cat.build("torus2").zero(3)})


def test_degree_mismatch_rejected():
    T = cat.build("torus2")
    with pytest.raises(DegreeMismatch):
        extend(T, [("t", 1)], {"t": T.parse("a1")})


def test_non_cocycle_rejected():
    H = cat.build("heis2")
    with pytest.raises(NotCocycle):
        extend(H, [("s", 1)], {"s": H.parse("a1*t")})


def test_missing_tau_rejected():
    with pytest.raises(ValueError):
        HirschData(cat.build("torus1"), [("t", 1)], {})


# changing tau inside its class ---------------------------------------------

def test_tau_homotopy_iso_on_heisenberg_base():
    H = cat.build("heis1")
    h1 = HirschData(H, [("s", 1)], {"s": H.parse("a1*b1")})
    h2 = HirschData(H, [("s", 1)], {"s": H.zero(2)})
    phi = tau_homotopy_iso(h1, h2)
    # s -> s + t with dt = a1 b1
    assert phi(phi.source.basis_element("s")) == phi.target.parse("s + t")
    top = phi.source.top_degree
    for k in range(top + 1):
        m = phi.induced(k)
        assert m.nrows == m.ncols == m.rank()
    assert q_equivalence(phi, top - 1)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_tau_homotopy_iso_random_coboundary(data):
    H = cat.build("heis2")
    a = H.element(1, [data.draw(coeff) for _ in range(H.dim(1))])
    base_tau = H.parse("a1*b1 - a2*b2")
    h1 = HirschData(H, [("s", 1)], {"s": base_tau + a.d()})
    h2 = HirschData(H, [("s", 1)], {"s": base_tau})
    phi = tau_homotopy_iso(h1, h2)
    assert betti_numbers(phi.source) == betti_numbers(phi.target)
    for k in range(phi.source.top_degree + 1):
        assert phi.induced(k).rank() == cohomology(phi.source).betti[k]


def test_tau_homotopy_iso_classes_differ():
    T = cat.build("torus1")
    h1 = HirschData(T, [("s", 1)], {"s": T.parse("a1*b1")})
    h2 = HirschData(T, [("s", 1)], {"s": T.zero(2)})
    with pytest.raises(ClassesDiffer):
        tau_homotopy_iso(h1, h2)


def test_tau_homotopy_iso_shape_errors():
    T, S = cat.build("torus1"), cat.build("surface1")
    with pytest.raises(ValueError):
        tau_homotopy_iso(HirschData(T, [("s", 1)], {"s": T.zero(2)}), HirschData(S, [("s", 1)], {"s": S.zero(2)}))
    with pytest.raises(ValueError):
        tau_homotopy_iso(HirschData(T, [("s", 1)], {"s": T.zero(2)}), HirschData(T, [("u", 1)], {"u": T.zero(2)}))


def test_tau_homotopy_iso_classes_differ_on_polynomial_base():
    P = cat.build("poly")
    gens = [("t11", 11)]
    h1 = HirschData(P, gens, {"t11": "x6^2"})
    h2 = HirschData(P, gens, {"t11": "2*x6^2"})
    with pytest.raises(ClassesDiffer):
        tau_homotopy_iso(h1, h2)
    same = tau_homotopy_iso(h1, HirschData(P, gens, {"t11": "x6^2"}))
    assert all(same.maps[k] == same.maps[k].identity(same.source.dim(k)) for k in range(12))


def test_link2_betti_from_exact_sequence():
    S = cat.build("surface2")
    assert les_betti(S, S.parse("w"), 3) == (1, 4, 4, 1) == betti_numbers(cat.build("link2"))
