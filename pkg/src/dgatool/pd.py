"""Poincaré duality certificates for finite CDGAs."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import TableDGA
from .errors import NotPD
from .hirsch import HirschData, hirsch_extend
from .linalg import ZERO, RationalMatrix


@dataclass
class PDCertificate:
    n: int
    topClassIndex: int | None
    pairingRanks: list
    isPD: bool
    isPDCDGA: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.isPDCDGA


def pairing_matrix(A: TableDGA, n: int, i: int, top: int = 0) -> RationalMatrix:
    """Matrix of A^i x A^(n-i) -> A^n, read on the coefficient of the top basis element."""
    rows = [tuple(A.mul_basis(i, a, n - i, b).get(top, ZERO) for b in range(A.dim(n - i))) for a in range(A.dim(i))]
    return RationalMatrix(rows, A.dim(n - i))


def pd_check(A: TableDGA, n: int) -> PDCertificate:
    """Certify A as an n-dimensional Poincaré duality algebra (and PD-CDGA when d A^(n-1) = 0)."""
    A.require(n, "Poincaré duality")
    reasons = []
    if not A.finite:
        reasons.append("algebra is not known to vanish above its cap")
    above = [k for k in range(n + 1, A.cap + 1) if A.dim(k)]
    if above:
        reasons.append(f"nonzero pieces above degree {n}: {above}")
    top = 0 if A.dim(n) == 1 else None
    if A.dim(n) != 1:
        reasons.append(f"dim A^{n} = {A.dim(n)}")
    ranks = []
    for i in range(n + 1):
        if top is None:
            ranks.append(None)
            continue
        r = pairing_matrix(A, n, i, top).rank()
        ranks.append(r)
        if not (r == A.dim(i) == A.dim(n - i)):
            reasons.append(f"pairing in degree {i} has rank {r} on dims {A.dim(i)}, {A.dim(n - i)}")
    is_pd = not reasons
    is_pdcdga = is_pd and (n == 0 or A.d_matrix(n - 1).is_zero())
    if is_pd and not is_pdcdga:
        reasons.append(f"d is nonzero on A^{n - 1}")
    return PDCertificate(n, top, ranks, is_pd, is_pdcdga, reasons)


def hirsch_pd_check(base: TableDGA, n: int, h: HirschData) -> PDCertificate:
    """Certify the extension of an n-PD-CDGA base in dimension n + Σ m_α."""
    if h.base is not base:
        raise ValueError("Hirsch data is over a different base")
    cert = pd_check(base, n)
    if not cert.isPDCDGA:
        raise NotPD(f"{base.name} is not an {n}-PD-CDGA: {cert.reasons}")
    ext, _ = hirsch_extend(h)
    return pd_check(ext, n + h.total_degree)
