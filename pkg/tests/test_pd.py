import pytest

from dgatool import catalog as cat
from dgatool.algebra import build_table_dga
from dgatool.errors import NotPD
from dgatool.hirsch import HirschData
from dgatool.pd import hirsch_pd_check, pairing_matrix, pd_check


@pytest.mark.parametrize(
    "key, n",
    [("circle", 1), ("surface1", 2), ("surface3", 2), ("torus2", 4), ("torus3", 6), ("s2xs2", 4), ("heis1", 3), ("heis2", 5), ("link2", 3), ("hopf_s3", 7)],
)
def test_pd_cdga(key, n):
    cert = pd_check(cat.build(key), n)
    assert cert.isPD and cert.isPDCDGA, cert.reasons
    assert cert.topClassIndex == 0
    A = cat.build(key)
    assert cert.pairingRanks == [A.dim(i) for i in range(n + 1)]


def test_wrong_dimension_fails():
    cert = pd_check(cat.build("surface2"), 1)
    assert not cert.isPD and cert.reasons


def test_non_finite_is_never_pd():
    cert = pd_check(cat.build("poly"), 6)
    assert not cert.isPD
    assert any("cap" in r for r in cert.reasons)


def test_degenerate_pairing():
    # 1, a in degree 1, w in degree 2 with a*a = 0
    A = build_table_dga({"basis": [["1"], ["a"], ["w"]], "finite": True})
    cert = pd_check(A, 2)
    assert not cert.isPD
    assert cert.pairingRanks[1] == 0


def test_pd_but_not_pd_cdga():
    A = build_table_dga(
        {
            "basis": [["1"], ["a"], ["b"], ["w"]],
            "mult": [{"left": "a", "right": "b", "result": {"w": 1}}],
            "diff": {"b": {"w": 1}},
            "finite": True,
        }
    )
    cert = pd_check(A, 3)
    assert cert.isPD and not cert.isPDCDGA
    assert not cert


def test_pairing_matrix_surface():
    M = pairing_matrix(cat.build("surface1"), 2, 1)
    assert M.rows == ((0, 1), (-1, 0))


def test_hirsch_pd_check():
    S = cat.build("s2xs2")
    cert = hirsch_pd_check(S, 4, HirschData(S, [("t3", 3)], {"t3": "w"}))
    assert cert.n == 7 and cert.isPDCDGA
    T = cat.build("surface2")
    assert hirsch_pd_check(T, 2, HirschData(T, [("t", 1)], {"t": "w"})).isPDCDGA


def test_hirsch_pd_check_errors():
    P = cat.build("poly")
    with pytest.raises(NotPD):
        hirsch_pd_check(P, 6, HirschData(P, [("t", 11)], {"t": "x6^2"}))
    S, T = cat.build("s2xs2"), cat.build("torus1")
    with pytest.raises(ValueError):
        hirsch_pd_check(S, 4, HirschData(T, [("t", 1)], {"t": T.zero(2)}))
