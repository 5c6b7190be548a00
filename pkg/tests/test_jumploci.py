import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dgatool import catalog as cat
from dgatool.cohomology import betti_numbers
from dgatool.errors import NotFlat, NotPD, ShapeMismatch
from dgatool.jumploci import (
    LIE_ALGEBRAS,
    CovariantComplex,
    FlatConnection,
    base_part,
    classify_flat,
    covariant_complex,
    curvature,
    in_F1,
    in_Pi,
    is_flat,
    is_pullback,
    lie_algebra,
    perturb,
    product_formula_check,
    resonance_dims,
    resonance_formula_check,
    sample_flat,
    sample_flat_on_zero_d,
    sigma,
    twisted_pd_check,
)
from dgatool.linalg import RationalMatrix

seeds = st.integers(0, 10_000)


def test_lie_algebra_brackets():
    sl2 = lie_algebra("sl2")
    H, E, Fv = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert sl2.bracket(H, E) == (0, 2, 0)
    assert sl2.bracket(H, Fv) == (0, 0, -2)
    assert sl2.bracket(E, Fv) == (1, 0, 0)
    assert lie_algebra("borel2").bracket((1, 0), (0, 1)) == (0, 2)
    assert all(not any(x) for row in lie_algebra("abelian1").structure_constants for x in row)
    with pytest.raises(ValueError):
        lie_algebra("so3")


def test_zero_connection_gives_betti():
    for key in ("heis1", "link2", "t2_double"):
        A = cat.build(key)
        b = list(betti_numbers(A))
        for name, L in LIE_ALGEBRAS.items():
            om = FlatConnection(A, name, RationalMatrix.zeros(A.dim(1), L.dim))
            assert resonance_dims(om).dims == [L.rep_dim * x for x in b]


def test_shape_mismatch():
    A = cat.build("heis1")
    with pytest.raises(ShapeMismatch):
        FlatConnection(A, "sl2", RationalMatrix.zeros(2, 3))


def test_non_flat_connection():
    A = cat.build("link2")
    # a1 x H + b1 x E has curvature 2 a1 b1 x E
    coeffs = [[0, 0, 0] for _ in range(5)]
    coeffs[0][0], coeffs[1][1] = 1, 1
    om = FlatConnection(A, "sl2", coeffs)
    assert not is_flat(om)
    curv = curvature(om)
    assert not any(curv[0]) and any(curv[1]) and not any(curv[2])
    with pytest.raises(NotFlat):
        CovariantComplex(om)
    with pytest.raises(NotFlat):
        classify_flat(om)


def test_closed_rank_one_membership():
    A = cat.build("link2")
    eta = [1, 0, 0, 0, 0]  # a1 is closed
    nil = FlatConnection(A, "sl2", [[0, x, 0] for x in eta])
    semi = FlatConnection(A, "sl2", [[x, 0, 0] for x in eta])
    assert in_F1(nil) and in_Pi(nil)
    assert in_F1(semi) and not in_Pi(semi)
    assert classify_flat(semi) in ("F1", "both")


@pytest.mark.parametrize("key", ["link1", "link2", "heis1"])
@pytest.mark.parametrize("lie", ["borel2", "sl2", "gl2"])
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_samples_are_flat_with_d_squared_zero(key, lie, seed):
    A = cat.build(key)
    om = sample_flat(A, lie, random.Random(seed), central=True)
    assert is_flat(om)
    covariant_complex(om)  # raises if d_ω² ≠ 0
    if lie != "gl2":
        assert classify_flat(om) in ("F1", "pullback", "both")


@pytest.mark.parametrize("lie, rank", [("sl2", 2), ("borel2", 2), ("gl2", 3)])
def test_base_sampler_reaches_higher_rank(lie, rank):
    B = cat.build("surface2")
    rng = random.Random(7)
    ranks = {sample_flat_on_zero_d(B, lie, rng).coeffs.rank() for _ in range(10)}
    assert max(ranks) >= rank - (1 if lie == "gl2" else 0)
    for _ in range(5):
        assert is_flat(sample_flat_on_zero_d(B, lie, rng))


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_pullback_round_trip(seed):
    A = cat.build("link2")
    om = sample_flat(A, "sl2", random.Random(seed))
    base, pure = base_part(om)
    if is_pullback(om):
        assert pure and is_flat(base)


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_perturbations_almost_never_flat(seed):
    rng = random.Random(seed)
    A = cat.build("link2")
    om = perturb(sample_flat(A, "sl2", rng), rng)
    # a random perturbation is flat only on a proper subvariety
    if is_flat(om):
        assert in_F1(om) or is_pullback(om)


@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_sigma_is_an_involution(seed):
    A = cat.build("link1")
    om = sample_flat(A, "sl2", random.Random(seed)).to_gl2()
    assert sigma(sigma(om)) == om
    assert is_flat(sigma(om))
    r = FlatConnection(A, "abelian1", [[F(i, 3)] for i in (1, -2, 0)])
    assert sigma(r) == -r


@pytest.mark.parametrize("lie", ["abelian1", "sl2", "gl2"])
def test_twisted_duality_on_link2(lie):
    A = cat.build("link2")
    rng = random.Random(3)
    for _ in range(5):
        om = sample_flat(A, lie, rng)
        rep = twisted_pd_check(A, om, 3, square_samples=10, seed=1)
        assert rep.ok, (rep.dims, rep.dual_dims)
        assert rep.square_checks == 10


def test_twisted_duality_needs_pd():
    P = cat.build("surface1")
    om = FlatConnection(P, "abelian1", [[0], [0]])
    assert twisted_pd_check(P, om, 2)
    A = cat.build("hopf_s3")
    with pytest.raises(NotPD):
        twisted_pd_check(A, FlatConnection(A, "abelian1", RationalMatrix.zeros(0, 1)), 6)


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("lie", ["borel2", "sl2"])
def test_resonance_formula(g, lie):
    rep = resonance_formula_check(cat.build(f"link{g}"), lie, samples=40, seed=5)
    assert rep.ok, rep.details[:3]


def test_product_formula_small():
    rep = product_formula_check(cat.build("surface1"), cat.build("circle"), 2, samples=30, seed=2)
    assert rep.ok


def test_classify_needs_extension_and_small_lie():
    T = cat.build("torus1")
    with pytest.raises(ValueError):
        classify_flat(FlatConnection(T, "sl2", RationalMatrix.zeros(2, 3)))
    A = cat.build("link1")
    with pytest.raises(ValueError):
        classify_flat(FlatConnection(A, "gl2", RationalMatrix.zeros(3, 4)))


def test_connection_json_round_trip():
    A = cat.build("link1")
    om = sample_flat(A, "borel2", random.Random(11))
    assert FlatConnection.from_json(A, om.to_json()) == om
