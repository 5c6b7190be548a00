from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dgatool import catalog as cat
from dgatool.algebra import build_table_dga, table_description, tensor_product, verify_positive_weights
from dgatool.cohomology import betti_numbers
from dgatool.errors import AxiomViolation, CapExceeded, MissingWeights
from dgatool.expr import ExpressionError
from dgatool.sullivan import SullivanModel, free_dims, realize_sullivan

coeff = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def random_element(A, k, data):
    return A.element(k, [data.draw(coeff) for _ in range(A.dim(k))])


# signs and small oracles ----------------------------------------------------

def test_odd_generators_anticommute():
    T = cat.build("torus2")
    a, b = T.parse("a1"), T.parse("b1")
    assert a * b == -(b * a)
    assert (a * a).is_zero()


def test_even_generators_commute_and_square():
    P = cat.build("poly")
    x, y = P.parse("x6"), P.parse("x10")
    assert x * y == y * x
    assert not (x * x).is_zero()
    assert (x ** 2).degree == 12


def test_heisenberg_differential():
    A = cat.build("heis1")
    assert A.parse("t").d() == A.parse("a1*b1")
    assert A.parse("a1").is_cocycle()
    assert not A.parse("t").is_cocycle()


def test_parse_errors():
    A = cat.build("heis1")
    assert A.parse("2*a1*b1 - 1/2*a1*t").coords == (2, F(-1, 2), 0)
    for text in ("q1", "a1^"):
        with pytest.raises(ExpressionError):
            A.parse(text)
    with pytest.raises(ExpressionError):
        A.parse("a1*b1", 1)


def test_product_above_cap_raises():
    A = cat.build("poly")
    with pytest.raises(CapExceeded):
        A.parse("x10^2") * A.parse("x6")


# sullivan realisation -------------------------------------------------------

def test_free_dims_oracle():
    assert free_dims([2], 6) == [1, 0, 1, 0, 1, 0, 1]
    assert free_dims([1, 1], 3) == [1, 2, 1, 0]
    assert free_dims([6, 10], 22)[20] == 1
    assert free_dims([2, 4], 8)[8] == 3


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.integers(2, 9))
def test_sullivan_dims_match_generating_function(degrees, cap):
    gens = [(f"g{i}", d) for i, d in enumerate(degrees)]
    A = realize_sullivan(SullivanModel(gens, {}, cap))
    assert list(A.dims) == free_dims(degrees, cap)


def test_sullivan_model_rejections():
    with pytest.raises(ValueError):
        SullivanModel([("x", 2), ("x", 3)], {}, 4)
    with pytest.raises(ValueError):
        SullivanModel([("x", 0)], {}, 4)
    with pytest.raises(ValueError):
        SullivanModel([("x", 2)], {"y": "x"}, 4)


def test_sullivan_differential_needs_d_squared_zero():
    # dy = x, dz = y is not a differential
    with pytest.raises(AxiomViolation):
        realize_sullivan(SullivanModel([("x", 3), ("y", 2), ("z", 1)], {"y": "x", "z": "y"}, 4))


def test_sullivan_model_of_odd_sphere():
    A = realize_sullivan(SullivanModel([("x", 2), ("y", 3)], {"y": "x^2"}, 8))
    assert betti_numbers(A, 7) == (1, 0, 1, 0, 0, 0, 0, 0)


# random-element axioms ------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.data())
def test_graded_commutativity_on_torus3(data):
    A = cat.build("torus3")
    i, j = data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3))
    x, y = random_element(A, i, data), random_element(A, j, data)
    assert x * y == (-1) ** (i * j) * (y * x)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_associativity_on_heis2(data):
    A = cat.build("heis2")
    x, y, z = (random_element(A, k, data) for k in (1, 1, 2))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_leibniz_on_heis2(data):
    A = cat.build("heis2")
    i = data.draw(st.integers(1, 2))
    x, y = random_element(A, i, data), random_element(A, 1, data)
    assert (x * y).d() == x.d() * y + (-1) ** i * (x * y.d())


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_d_squared_on_sp5_model(data):
    A = cat.build("sp5su5")
    k = data.draw(st.sampled_from([11, 15, 16, 17, 19]))
    x = random_element(A, k, data)
    assert x.d().d().is_zero()


# axiom violations -----------------------------------------------------------

def _kind(desc):
    with pytest.raises(AxiomViolation) as err:
        build_table_dga(desc)
    return err.value.kind, err.value.witness


def test_violation_unit():
    kind, _ = _kind({"basis": [["1", "u"]], "cap": 0})
    assert kind == "unit"


def test_violation_commutativity():
    desc = {
        "basis": [["1"], ["a", "b"], ["c"]],
        "mult": [{"left": "a", "right": "b", "result": {"c": 1}}, {"left": "b", "right": "a", "result": {"c": 1}}],
    }
    assert _kind(desc) == ("commutativity", ("a", "b"))


def test_violation_associativity():
    desc = {
        "basis": [["1"], [], ["x", "y", "z"], [], ["u"], [], ["v"]],
        "mult": [{"left": "x", "right": "y", "result": {"u": 1}}, {"left": "u", "right": "z", "result": {"v": 1}}],
    }
    kind, wit = _kind(desc)
    assert kind == "associativity"
    assert set(wit) <= {"x", "y", "z"}


def test_violation_d_squared():
    desc = {"basis": [["1"], ["a"], ["c"], ["e"]], "diff": {"a": {"c": 1}, "c": {"e": 1}}}
    assert _kind(desc) == ("d_squared", ("a",))


def test_violation_leibniz():
    desc = {
        "basis": [["1"], ["a", "b"], ["c"], ["e"]],
        "mult": [{"left": "a", "right": "b", "result": {"c": 1}}],
        "diff": {"c": {"e": 1}},
    }
    assert _kind(desc) == ("leibniz", ("a", "b"))


def test_table_round_trip_for_catalog():
    for key in ("heis1", "s2xs2", "torus2"):
        A = cat.build(key)
        B = build_table_dga(table_description(A))
        assert B.structurally_equal(A)


# weights --------------------------------------------------------------------

def test_weights_verified():
    assert verify_positive_weights(cat.build("heis1")) == (True, None)
    assert verify_positive_weights(cat.build("sp5su5"))[0]


def test_weight_failures():
    A = cat.build("heis1")
    w = [list(ws) for ws in A.weights]
    w[1][0] = 0
    ok, wit = verify_positive_weights(A.with_weights(w))
    assert not ok and wit[0] == "positivity"
    w = [list(ws) for ws in A.weights]
    w[1][2] = 3  # t with weight 3 but dt = a1 b1 of weight 2
    ok, wit = verify_positive_weights(A.with_weights(w))
    assert not ok and wit[0] in ("differential", "product")


def test_missing_weights():
    A = build_table_dga({"basis": [["1"], ["a"]]})
    with pytest.raises(MissingWeights):
        verify_positive_weights(A)


# tensor products ------------------------------------------------------------

def test_tensor_of_circles_is_torus():
    C = cat.build("circle")
    T = tensor_product(C, C)
    assert betti_numbers(T) == betti_numbers(cat.build("torus1")) == (1, 2, 1)
    x, y = T.basis(1)
    assert not (x * y).is_zero() and x * y == -(y * x)


def test_tensor_betti_is_convolution():
    A, B = cat.build("heis1"), cat.build("surface1")
    bA, bB = betti_numbers(A), betti_numbers(B)
    T = tensor_product(A, B)
    conv = tuple(sum(bA[i] * bB[k - i] for i in range(len(bA)) if 0 <= k - i < len(bB)) for k in range(len(bA) + len(bB) - 1))
    assert betti_numbers(T) == conv
