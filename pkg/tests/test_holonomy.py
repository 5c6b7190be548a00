from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dgatool import catalog as cat
from dgatool.errors import BasisSplitInvalid, DepthGuardExceeded, NonHomogeneousPresentation, NotZeroDifferential
from dgatool.hirsch import HirschData
from dgatool.holonomy import (
    LiePresentation,
    eliminate_s_generators,
    free_presentation,
    holonomy_presentation,
    lcs_dims,
    relation_degree_profile,
)
from dgatool.lie import add_into, bracket, from_lyndon, gen, lyndon_words, mobius, std_bracket, to_lyndon, witt


def test_mobius_and_witt_oracles():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert [witt(2, k) for k in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [witt(3, k) for k in range(1, 5)] == [3, 3, 8, 18]


@pytest.mark.parametrize("n, k", [(2, 1), (2, 5), (3, 4), (4, 3), (2, 6)])
def test_lyndon_count_is_witt(n, k):
    words = lyndon_words(n, k)
    assert len(words) == witt(n, k)
    assert len(set(words)) == len(words)


def test_jacobi_identity():
    x, y, z = gen(0), gen(1), gen(2)
    acc = {}
    add_into(acc, bracket(x, bracket(y, z)))
    add_into(acc, bracket(y, bracket(z, x)))
    add_into(acc, bracket(z, bracket(x, y)))
    assert not acc


def _lie_poly(data, n, k):
    words = lyndon_words(n, k)
    out = {}
    for w in words:
        c = data.draw(st.integers(-3, 3))
        if c:
            add_into(out, std_bracket(w), c)
    return out


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lyndon_round_trip(data):
    n, k = data.draw(st.integers(2, 3)), data.draw(st.integers(1, 5))
    p = _lie_poly(data, n, k)
    coords = to_lyndon(p)
    assert from_lyndon(coords) == {m: c for m, c in p.items() if c}


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_bracket_antisymmetry(data):
    p, q = _lie_poly(data, 2, 2), _lie_poly(data, 2, 3)
    acc = dict(bracket(p, q))
    add_into(acc, bracket(q, p))
    assert not acc


def test_free_lie_lcs():
    assert lcs_dims(free_presentation(["a", "b"]), 5).dims == [2, 1, 2, 3, 6]


def test_heis1_holonomy():
    p = holonomy_presentation(cat.build("heis1"))
    assert lcs_dims(p, 5).dims == [2, 1, 0, 0, 0]
    assert set(relation_degree_profile(p)) <= {2, 3}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_holonomy_is_abelian(n):
    p = holonomy_presentation(cat.build(f"torus{n}"))
    assert lcs_dims(p, 3).dims == [2 * n, 0, 0]


@pytest.mark.parametrize("g, dims", [(1, [2, 0, 0, 0]), (2, [4, 5, 16, 45]), (3, [6, 14, 64, 280])])
def test_surface_holonomy_one_relator(g, dims):
    p = holonomy_presentation(cat.build(f"surface{g}"))
    assert relation_degree_profile(p) == [2]
    assert lcs_dims(p, 4).dims == dims


@pytest.mark.parametrize("key", ["heis1", "heis2", "link1", "link2", "t2_double"])
def test_elimination_matches_holonomy(key):
    E = cat.build(key)
    info = E.hirsch
    h = HirschData(info.base, info.generators, info.tau)
    elim = eliminate_s_generators(h)
    full = eliminate_s_generators(h, include_redundant=True)
    direct = holonomy_presentation(E)
    depth = 4 if elim.n <= 6 else 3
    a = lcs_dims(elim, depth).dims
    assert a == lcs_dims(full, depth).dims == lcs_dims(direct, depth).dims
    assert set(relation_degree_profile(elim)) <= {2, 3}


def test_elimination_rejects_dependent_transgressions():
    T = cat.build("torus1")
    h = HirschData(T, [("s", 1), ("u", 1)], {"s": "a1*b1", "u": "2*a1*b1"})
    with pytest.raises(BasisSplitInvalid):
        eliminate_s_generators(h)


def test_elimination_rejects_nonzero_d_and_high_degree():
    H = cat.build("heis1")
    with pytest.raises(NotZeroDifferential):
        eliminate_s_generators(HirschData(H, [("s", 1)], {"s": H.zero(2)}))
    S = cat.build("s2xs2")
    with pytest.raises(ValueError):
        eliminate_s_generators(HirschData(S, [("s", 3)], {"s": S.parse("w")}))


def test_guards():
    with pytest.raises(DepthGuardExceeded):
        lcs_dims(free_presentation(list("abcdefghijk")), 2)
    with pytest.raises(DepthGuardExceeded):
        lcs_dims(free_presentation(["a", "b"]), 7)


def test_non_homogeneous_relator():
    p = LiePresentation(["a", "b"])
    r = dict(bracket(gen(0), gen(1)))
    add_into(r, bracket(gen(0), bracket(gen(0), gen(1))))
    with pytest.raises(NonHomogeneousPresentation):
        p.add(r)


def test_presentation_json_and_describe():
    p = LiePresentation(["a", "b"])
    p.add(bracket(gen(0), gen(1)), "I")
    data = p.to_json()
    assert data["relators"][0]["lyndonCoords"] == ["1/1"]
    assert p.describe() == ["[a,b]"]
    assert lcs_dims(p, 3).dims == [2, 0, 0]
    r = p.relators[0]
    assert r.vector(2) == (F(1),)
