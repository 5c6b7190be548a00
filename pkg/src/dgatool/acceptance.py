"""End-to-end acceptance checks 1-11, shared by ``dgatool catalog verify`` and the test suite.

Each check returns a :class:`CriterionResult`; a check with a time limit
fails when it overruns. Randomized checks derive their seeds from the one
passed to :func:`run_all`.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import catalog as cat
from .cohomology import betti_numbers, massey_triple
from .errors import CapExceeded, StratumViolation
from .hirsch import HirschData, elementary_les_check, les_betti
from .holonomy import eliminate_s_generators, free_presentation, holonomy_presentation, lcs_dims, relation_degree_profile
from .jumploci import (
    FlatConnection,
    classify_flat,
    is_flat,
    lie_algebra,
    perturb,
    product_formula_check,
    random_closed_one_form,
    resonance_dims,
    resonance_formula_check,
    sample_flat,
    twisted_pd_check,
)
from .linalg import ZERO, RationalMatrix
from .pd import hirsch_pd_check, pd_check
from .regularity import formality_certificate, is_q_regular
from .sullivan import SullivanModel, realize_sullivan


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    elapsed: float
    limit: float | None = None
    details: list = field(default_factory=list)

    def line(self) -> str:
        lim = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"criterion {self.number:>2}: {'PASS' if self.ok else 'FAIL'}  {self.title}  [{self.elapsed:.2f}s{lim}]"


def _run(number, title, limit, body) -> CriterionResult:
    details: list = []
    t0 = time.perf_counter()
    try:
        ok = bool(body(details))
    except Exception as exc:  # a crash is a failure with its message kept
        ok = False
        details.append(f"error: {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        details.append(f"took {elapsed:.2f}s, limit {limit}s")
        ok = False
    return CriterionResult(number, title, ok, elapsed, limit, details)


def _expect(details, label, got, want) -> bool:
    ok = got == want
    if not ok:
        details.append(f"{label}: got {got!r}, expected {want!r}")
    return ok


# ---------------------------------------------------------------------------


def criterion_1(seed: int = 0) -> CriterionResult:
    def body(D):
        P = cat.polynomial_ring(22)
        seq = [P.parse(s) for s in cat.SP5_SEQUENCE]
        r19 = is_q_regular(P, seq, 19)
        r20 = is_q_regular(P, seq, 20)
        cert = formality_certificate(P, seq, 19)
        M = cat.sp5_su5_model(22)
        m = massey_triple(M, M.parse("x6"), M.parse("x6"), M.parse("x10"))
        return all([
            _expect(D, "19-regular", r19.verdict, True),
            _expect(D, "20-regular", r20.verdict, False),
            _expect(D, "witness degree", r20.failure and r20.failure[1], 6),
            _expect(D, "certificate at 19", cert.verified, True),
            _expect(D, "massey nonvanishing", not m.vanishes, True),
            _expect(D, "indeterminacy dim", len(m.indeterminacy), 0),
        ])

    return _run(1, "Sp(5)/SU(5): regularity, certificate, Massey product", 10.0, body)


def criterion_2(seed: int = 0) -> CriterionResult:
    frozen = {1: (1, 2, 2, 1), 2: (1, 4, 5, 5, 4, 1)}

    def body(D):
        ok = True
        for n in (1, 2, 3):
            T = cat.torus_algebra(n)
            h = cat.kahler_class(T)
            ok &= _expect(D, f"n={n} (n-1)-regular", is_q_regular(T, [h], n - 1).verdict, True)
            ok &= _expect(D, f"n={n} n-regular", is_q_regular(T, [h], n).verdict, False)
            Hn = cat.tievsky_model(T, h, f"heis{n}")
            b = betti_numbers(Hn)
            ok &= _expect(D, f"n={n} betti vs exact sequence", b, les_betti(T, h, Hn.cap))
            if n in frozen:
                ok &= _expect(D, f"n={n} betti", b, frozen[n])
        H1 = cat.heisenberg_model(1)
        a, bb = H1.parse("a1"), H1.parse("b1")
        ok &= _expect(D, "massey <a,a,b> nonvanishing", not massey_triple(H1, a, a, bb).vanishes, True)
        return ok

    return _run(2, "Heisenberg family: regularity, Betti numbers, Massey product", 5.0, body)


def criterion_3(seed: int = 0) -> CriterionResult:
    def body(D):
        S = cat.s2xs2_algebra()
        w = S.parse("w")
        ext = cat.hopf_s3_model()
        cert = hirsch_pd_check(S, 4, HirschData(S, [("t3", 3)], {"t3": w}))
        return all([
            _expect(D, "3-regular", is_q_regular(S, [w], 3).verdict, True),
            _expect(D, "4-regular", is_q_regular(S, [w], 4).verdict, False),
            _expect(D, "7-PD-CDGA", pd_check(ext, 7).isPDCDGA, True),
            _expect(D, "7-PD-CDGA via the base", cert.isPDCDGA, True),
        ])

    return _run(3, "Hopf bundle over S^2 x S^2", 2.0, body)


def random_polynomial_case(rng: random.Random):
    """A capped polynomial ring on even generators and a short monomial sequence."""
    k = rng.randint(1, 3)
    degs = sorted(rng.choice((2, 4, 6)) for _ in range(k))
    names = [f"y{i}" for i in range(k)]
    cap = rng.randint(10, 14)
    P = realize_sullivan(SullivanModel(list(zip(names, degs)), {}, cap, "rand"))
    seq = []
    limit = max(cap // 2, degs[0])
    for _ in range(rng.randint(1, min(3, k + 1))):
        while True:
            ex = [rng.randint(0, 2) for _ in range(k)]
            d = sum(e * g for e, g in zip(ex, degs))
            if 0 < d <= limit:
                break
        seq.append(P.parse("*".join(f"{n}^{e}" for n, e in zip(names, ex) if e)))
    return P, seq


def _implication_over_q(H, seq, details, label) -> tuple[int, int]:
    """Check regular => certified and monotonicity for every admissible q; returns (regular count, counterexamples)."""
    finite = H.finite
    top = H.cap + sum(e.degree - 1 for e in seq) if finite else H.cap - 2
    seen_false = False
    regular, bad = 0, 0
    for q in range(0, top + 1):
        try:
            rep = is_q_regular(H, seq, q)
        except CapExceeded:
            break
        if rep.verdict and seen_false:
            bad += 1
            details.append(f"{label}: regular at {q} after failing at a smaller q")
        seen_false |= not rep.verdict
        if rep.verdict:
            regular += 1
            try:
                cert = formality_certificate(H, seq, q)
            except CapExceeded:
                break
            if not cert.verified:
                bad += 1
                details.append(f"{label}: {q}-regular but certificate failed: {cert.report.failures}")
    return regular, bad


def criterion_4(seed: int = 0) -> CriterionResult:
    def body(D):
        bad = regular = 0
        seen = set()
        for key, e in cat.catalog().items():
            if e.regular is None or e.regular in seen:
                continue
            seen.add(e.regular)
            H, seq = cat.regular_target(key)
            r, b = _implication_over_q(H, seq, D, key)
            regular, bad = regular + r, bad + b
        rng = random.Random(seed)
        for i in range(20):
            P, seq = random_polynomial_case(rng)
            r, b = _implication_over_q(P, seq, D, f"random {i}")
            regular, bad = regular + r, bad + b
        D.append(f"{regular} regular instances, {bad} counterexamples")
        return bad == 0 and regular > 0

    return _run(4, "regular implies verified formality certificate", None, body)


def criterion_5(seed: int = 0) -> CriterionResult:
    def body(D):
        count = 0
        for label, _, _ in cat.ELEMENTARY_EXTENSIONS:
            H, e = cat.elementary_extension(label)
            m = e.degree - 1
            upto = H.cap + m - 1 if H.finite else H.cap - 2
            rep = elementary_les_check(H, e, upto)
            if not rep.exact:
                D.append(f"{label}: inexact at {[ (n.label, n.degree) for n in rep.nodes if not n.exact]}")
            else:
                count += 1
        D.append(f"{count} exact extensions")
        return count == len(cat.ELEMENTARY_EXTENSIONS) and count >= 6

    return _run(5, "exact sequence of elementary extensions", None, body)


def _rank_one(A, eta):
    return FlatConnection(A, "abelian1", RationalMatrix([(x,) for x in eta], 1))


def criterion_6(seed: int = 0) -> CriterionResult:
    def body(D):
        ok = True
        rng = random.Random(seed)
        for g in (1, 2):
            A = cat.link_model(g)
            zero = _rank_one(A, (ZERO,) * A.dim(1))
            pts = [zero] + [_rank_one(A, random_closed_one_form(A, rng)) for _ in range(50)]
            for om in pts:
                dims = resonance_dims(om).dims
                dual = resonance_dims(_rank_one(A, tuple(-x for x in om.coeffs.col(0)))).dims
                nonzero = not om.is_zero()
                want1 = 2 * g - 2 if nonzero else 2 * g
                ok &= _expect(D, f"g={g} dims[0]", dims[0], 0 if nonzero else 1)
                ok &= _expect(D, f"g={g} dims[1]", dims[1], want1)
                # table for R^1_s
                for s in range(0, 2 * g + 3):
                    if s <= 2 * g - 2:
                        expect = True
                    elif s <= 2 * g:
                        expect = not nonzero
                    else:
                        expect = False
                    ok &= _expect(D, f"g={g} R^1_{s}", dims[1] >= s, expect)
                ok &= _expect(D, f"g={g} R^0_1", dims[0] >= 1, not nonzero)
                ok &= _expect(D, f"g={g} degree 2 by duality", dims[2], dual[1])
                ok &= _expect(D, f"g={g} degree 3 by duality", dims[3], dual[0])
        return ok

    return _run(6, "rank-one resonance of link models", 30.0, body)


def curvature_oracle(om: FlatConnection) -> bool:
    """True iff dω + ½[ω,ω] vanishes, evaluated with matrices: Σ dη_k θ_k + Σ_(k<l) η_k η_l [θ_k, θ_l]."""
    A, L = om.algebra, om.lie
    n2, V = A.dim(2), L.rep_dim
    total = [RationalMatrix.zeros(V, V) for _ in range(n2)]
    d1 = A.d_matrix(1)
    for k in range(L.dim):
        de = d1.apply(om.eta(k))
        for r, c in enumerate(de):
            if c:
                total[r] = total[r] + L.basis[k].scale(c)
    for k, l in combinations(range(L.dim), 2):
        prod = A.mul_vec(1, om.eta(k), 1, om.eta(l))
        comm = L.basis[k] @ L.basis[l] - L.basis[l] @ L.basis[k]
        for r, c in enumerate(prod):
            if c:
                total[r] = total[r] + comm.scale(c)
    return all(m.is_zero() for m in total)


def criterion_7(seed: int = 0) -> CriterionResult:
    def body(D):
        ok = True
        rng = random.Random(seed)
        for key in ("link1", "link2", "heis1"):
            A = cat.build(key)
            for lie in ("borel2", "sl2"):
                counts: dict = {}
                violations = 0
                flats = []
                for _ in range(100):
                    om = sample_flat(A, lie, rng)
                    ok &= _expect(D, f"{key}/{lie} sample flat", (is_flat(om), curvature_oracle(om)), (True, True))
                    try:
                        kind = classify_flat(om)
                        counts[kind] = counts.get(kind, 0) + 1
                    except StratumViolation:
                        violations += 1
                    flats.append(om)
                ok &= _expect(D, f"{key}/{lie} stratum violations", violations, 0)
                rejected = 0
                for om in flats:
                    p = perturb(om, rng)
                    while curvature_oracle(p):
                        p = perturb(om, rng)
                    rejected += not is_flat(p)
                ok &= _expect(D, f"{key}/{lie} perturbations rejected", rejected, 100)
                D.append(f"{key}/{lie}: {counts}")
        return ok

    return _run(7, "flat connections lie in F1 or the pullback stratum", None, body)


def criterion_8(seed: int = 0) -> CriterionResult:
    def body(D):
        ok = True
        for g in (1, 2):
            A = cat.link_model(g)
            for lie in ("borel2", "sl2"):
                rep = resonance_formula_check(A, lie, 50, seed + g)
                ok &= _expect(D, f"g={g}/{lie} disagreements", rep.disagreements, 0)
        return ok

    return _run(8, "degree-one resonance: Pi, or Pi plus pullbacks", None, body)


def criterion_9(seed: int = 0) -> CriterionResult:
    def body(D):
        A = cat.link_model(2)
        rng = random.Random(seed)
        ok = True
        squares = 0
        for i in range(50):
            om = sample_flat(A, "gl2", rng, central=True)
            rep = twisted_pd_check(A, om, 3, square_samples=2, seed=seed + i)
            ok &= _expect(D, f"sample {i} duality", rep.dims_match, True)
            ok &= _expect(D, f"sample {i} square failures", rep.square_failures, 0)
            squares += rep.square_checks
        ok &= _expect(D, "square checks", squares, 100)
        return ok

    return _run(9, "twisted Poincare duality on the link model", None, body)


def criterion_10(seed: int = 0) -> CriterionResult:
    def body(D):
        ok = True
        for key in ("link1", "link2", "link3", "heis1", "heis2", "heis3", "t2_double"):
            A = cat.build(key)
            info = A.hirsch
            h = HirschData(info.base, info.generators, info.tau)
            p = eliminate_s_generators(h)
            ok &= _expect(D, f"{key} relator degrees", set(relation_degree_profile(p)) <= {2, 3}, True)
            depth = 5 if p.n <= 4 else 4
            base = lcs_dims(p, depth).dims
            ok &= _expect(D, f"{key} LCS with (V)/(VI)", lcs_dims(eliminate_s_generators(h, True), depth).dims, base)
            ok &= _expect(D, f"{key} LCS vs holonomy presentation", lcs_dims(holonomy_presentation(A), depth).dims, base)
            if key == "heis1":
                ok &= _expect(D, "heis1 LCS", base, [2, 1, 0, 0, 0])
        ok &= _expect(D, "free L(a,b)", lcs_dims(free_presentation(["a", "b"]), 5).dims, [2, 1, 2, 3, 6])
        return ok

    return _run(10, "holonomy presentations and LCS dimensions", None, body)


PRODUCT_PAIRS = (("circle", "circle", 1), ("surface2", "circle", 2), ("heis1", "surface1", 2))


def criterion_11(seed: int = 0) -> CriterionResult:
    def body(D):
        ok = True
        for i, (a, b, q) in enumerate(PRODUCT_PAIRS):
            rep = product_formula_check(cat.build(a), cat.build(b), q, 100, seed + i)
            ok &= _expect(D, f"{a} x {b} samples", rep.samples, 100)
            ok &= _expect(D, f"{a} x {b} disagreements", rep.disagreements, 0)
        return ok

    return _run(11, "product formula for degree-one resonance", None, body)


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
)


def run_all(seed: int = 42) -> list[CriterionResult]:
    return [c(seed) for c in CRITERIA]
