"""Zero-free disk for zeta(s) around s = 1.

On |s-1| <= T with 0 <= Re(s) <= 1,

    |(s-1) zeta(s)| >= 1 - gamma_0 - sum_{1<=n<=11} |gamma_n|/n! T^{n+1}
                       - 2.8876 sum_{n>=12} x^{n+1},     x = T e^{0.1728}/5.1513,

and the geometric tail equals 2.8876 x^13/(1-x). A positive right-hand side
certifies that zeta has no zeros in that part of the disk. The minorant is
strictly decreasing in T, so the largest certified radius is found by
bisection.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp

from . import constants as K
from .errors import MissingGamma, RegressionDetected, TailDivergence
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .stieltjes import StieltjesTable, zeta_table

SEARCH_UPPER = "4.33"


@dataclass(frozen=True)
class DiskCertificate:
    t0: mpmath.mpf
    head: mpmath.mpf
    tail: mpmath.mpf
    margin: mpmath.mpf
    gamma_precision: PrecisionContext

    @property
    def valid(self) -> bool:
        return self.margin > 0


def tail_ratio(T, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with mp.workdps(ctx.internal_digits):
        return mpmath.mpf(T) * mpmath.exp(mpmath.mpf(K.LOG_SLOPE)) / mpmath.mpf(K.THETA_FLOOR_Q1)


def convergence_radius(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """5.1513 e^{-0.1728}: the tail diverges at and beyond this radius."""
    with mp.workdps(ctx.internal_digits):
        return mpmath.mpf(K.THETA_FLOOR_Q1) * mpmath.exp(-mpmath.mpf(K.LOG_SLOPE))


def minorant(T, table: StieltjesTable, ctx: PrecisionContext = DEFAULT_CONTEXT) -> DiskCertificate:
    """Lower bound for |(s-1)zeta(s)| on the strip part of |s-1| <= T."""
    if table.kind != "zeta":
        raise ValueError(f"expected a zeta table, got {table.kind}")
    missing = [n for n in range(K.HEAD_TERMS + 1) if n not in table]
    if missing:
        raise MissingGamma(f"table lacks gamma_n for n = {missing}")
    with mp.workdps(ctx.internal_digits):
        T = mpmath.mpf(T)
        if T < 0:
            raise ValueError("radius must be non-negative")
        x = tail_ratio(T, ctx)
        if x >= 1:
            raise TailDivergence(f"tail ratio {mpmath.nstr(x, 8)} >= 1 at T = {mpmath.nstr(T, 8)}")
        head = 1 - table.real(0)
        for n in range(1, K.HEAD_TERMS + 1):
            head -= abs(table.real(n)) / mpmath.factorial(n) * T ** (n + 1)
        tail = mpmath.mpf(K.TAIL_FACTOR) * x ** K.TAIL_EXPONENT / (1 - x)
        margin = head - tail
    with mp.workdps(ctx.working_digits):
        return DiskCertificate(t0=+T, head=+head, tail=+tail, margin=+margin,
                               gamma_precision=table.precision)


def find_t0(table: StieltjesTable, tolerance, ctx: PrecisionContext = DEFAULT_CONTEXT) -> DiskCertificate:
    """Largest certified radius, to within ``tolerance``, by bisection.

    The returned certificate sits at the lower bracket end and so always has
    a positive margin.
    """
    with mp.workdps(ctx.internal_digits):
        tolerance = mpmath.mpf(tolerance)
        if tolerance <= 0:
            raise ValueError("tolerance must be positive")
        lo, hi = mpmath.mpf(0), mpmath.mpf(SEARCH_UPPER)
        best = minorant(lo, table, ctx)
        if not best.valid:
            return best
        while hi - lo >= tolerance:
            mid = (lo + hi) / 2
            cert = minorant(mid, table, ctx)
            if cert.valid:
                lo, best = mid, cert
            else:
                hi = mid
    return best


@dataclass(frozen=True)
class ImprovementReport:
    certificate: DiskCertificate
    prior_radius: mpmath.mpf
    area_ratio: mpmath.mpf

    @property
    def radius(self) -> mpmath.mpf:
        return self.certificate.t0


def check_improvement(table: StieltjesTable | None = None, tolerance="1e-6",
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> ImprovementReport:
    """Compare the certified radius with the prior radius sqrt(2)."""
    if table is None:
        table = zeta_table(K.HEAD_TERMS, ctx)
    cert = find_t0(table, tolerance, ctx)
    with mp.workdps(ctx.internal_digits):
        prior = mpmath.sqrt(2)
        if not (cert.valid and cert.t0 > prior):
            raise RegressionDetected(
                f"certified radius {mpmath.nstr(cert.t0, 8)} does not exceed sqrt(2)")
        ratio = (cert.t0 / prior) ** 2
    with mp.workdps(ctx.working_digits):
        return ImprovementReport(cert, +prior, +ratio)


def head_lower_bound_holds(s, gamma0) -> bool:
    """|1 + gamma_0 (s-1)| >= 1 - gamma_0 for a single point with 0 <= Re(s) <= 1."""
    z = mpmath.mpc(s) - 1
    return abs(1 + gamma0 * z) >= 1 - gamma0
