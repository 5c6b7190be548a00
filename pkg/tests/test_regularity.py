import pytest
from hypothesis import given, settings, strategies as st

from dgatool import catalog as cat
from dgatool.errors import CapExceeded, NotZeroDifferential, OddDegreeElement
from dgatool.regularity import formality_certificate, is_nzd_up_to, is_q_regular, quotient_by_ideal


def sp5_target():
    return cat.regular_target("sp5su5")


def test_sp5_regular_at_19_not_20():
    H, seq = sp5_target()
    assert is_q_regular(H, seq, 19)
    rep = is_q_regular(H, seq, 20)
    assert not rep
    idx, deg, wit = rep.failure
    assert deg == 6 and idx == 2
    # the witness lies in the kernel of multiplication by the image of e_3
    Q = rep.stages[idx]
    assert wit.algebra is Q and not wit.is_zero()


def test_sp5_certificate_at_19():
    H, seq = sp5_target()
    cert = formality_certificate(H, seq, 19)
    assert cert.verified
    assert [n for n, _ in cert.extension.hirsch.generators] == ["t11", "t19", "t15"]


def test_sp5_certificate_fails_past_regularity():
    H, seq = sp5_target()
    assert not formality_certificate(H, seq, 20)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kahler_class_regularity(n):
    H = cat.build(f"torus{n}")
    h = cat.kahler_class(H)
    assert is_q_regular(H, [h], n - 1)
    assert not is_q_regular(H, [h], n)


def test_s2xs2_orientation_regularity():
    H = cat.build("s2xs2")
    w = H.parse("w")
    assert is_q_regular(H, [w], 3)
    assert not is_q_regular(H, [w], 4)


def test_quotient_dims():
    H, seq = sp5_target()
    Q, proj = quotient_by_ideal(H, seq)
    assert [k for k in range(Q.cap + 1) if Q.dim(k)] == [0, 6, 10]
    assert proj(seq[0]).is_zero()


def test_nzd_edge_cases():
    H = cat.build("poly")
    assert is_nzd_up_to(H, H.parse("x6"), -1) == (True, None)
    ok, wit = is_nzd_up_to(H, H.zero(6), 0)
    assert not ok and wit.degree == 0
    assert is_nzd_up_to(H, "x6", 16)[0]
    with pytest.raises(CapExceeded):
        is_nzd_up_to(H, "x6", 17)


def test_regularity_errors():
    with pytest.raises(NotZeroDifferential):
        is_q_regular(cat.build("heis1"), [], 1)
    T = cat.build("torus1")
    with pytest.raises(OddDegreeElement):
        is_q_regular(T, [T.parse("a1")], 1)
    with pytest.raises(OddDegreeElement):
        formality_certificate(T, [T.parse("a1")], 1)


# properties over random monomial sequences in Q[x2, x4] ---------------------

from dgatool.sullivan import SullivanModel, realize_sullivan  # noqa: E402

POLY24 = realize_sullivan(SullivanModel([("x", 2), ("y", 4)], {}, 14, "p24"))
MONOS = [m for m in ("x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y")]
seqs = st.lists(st.sampled_from(MONOS), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(seqs, st.integers(0, 8))
def test_regularity_is_monotone(seq, q):
    H = POLY24
    els = [H.parse(s) for s in seq]
    if max(e.degree for e in els) + q - 2 > H.cap or q + 2 > 14:
        return
    if is_q_regular(H, els, q + 1):
        assert is_q_regular(H, els, q)


@settings(max_examples=25, deadline=None)
@given(seqs, st.integers(0, 6))
def test_regular_implies_certificate(seq, q):
    H = POLY24
    els = [H.parse(s) for s in seq]
    if q + 2 > 12:
        return
    if is_q_regular(H, els, q):
        assert formality_certificate(H, els, q).verified


def test_s2xs2_quotient_by_orientation_class():
    H = cat.build("s2xs2")
    Q, _ = quotient_by_ideal(H, [H.parse("w")])
    assert Q.dims == (1, 0, 2, 0, 0)
