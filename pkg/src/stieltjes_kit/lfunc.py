"""Direct evaluation of zeta(s, a) and L(s, chi) near s = 1, Laurent/Taylor
reconstruction from Stieltjes tables, and the truncated-Taylor certificate.

The direct evaluators use Euler-Maclaurin summation in s and share nothing
with the Stieltjes machinery, so they serve as an independent check on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
from mpmath import mp

from .characters import DirichletCharacter
from .errors import (BoundViolated, NonConvergence, OutsideDisk, PoleAtOne, QTooSmall,
                     UnsupportedCharacter)
from .numerics import (DEFAULT_CONTEXT, PrecisionContext, bernoulli,
                       fraction_to_mpf, stabilize)
from .stieltjes import StieltjesTable, as_rational, build_table

TAYLOR_MIN_MODULUS = 150
TAYLOR_BOUND_CONSTANT = "32.3"
TAYLOR_BOUND_EXPONENT = "2.5"


def hurwitz_cutoff(ctx: PrecisionContext) -> int:
    return max(20, ctx.working_digits)


@lru_cache(maxsize=None)
def _bernoulli_over_factorial(j: int, dps: int) -> mpmath.mpf:
    with mp.workdps(dps):
        return fraction_to_mpf(bernoulli(2 * j) / factorial(2 * j))


@lru_cache(maxsize=8192)
def _log_table(b: Fraction, dps: int, cutoff: int) -> tuple:
    with mp.workdps(dps):
        bm = fraction_to_mpf(b)
        return tuple(mpmath.log(k + bm) for k in range(cutoff + 1))


def _hurwitz_em(s, b: Fraction, dps: int, cutoff: int, regular: bool):
    """zeta(s, b) by Euler-Maclaurin; with ``regular`` returns zeta(s, b) - 1/(s-1)."""
    logs = _log_table(b, dps + 5, cutoff)
    with mp.workdps(dps + 5):
        s = mpmath.mpc(s)
        total = mpmath.fsum(mpmath.exp(-s * logs[k]) for k in range(cutoff))
        log_u = logs[cutoff]
        u_pow = mpmath.exp(-s * log_u)  # u^{-s}
        if regular:
            w = (1 - s) * log_u
            phi = mpmath.expm1(w) / w if w != 0 else mpmath.mpf(1)
            total += -log_u * phi
        else:
            total += u_pow * mpmath.exp(log_u) / (s - 1)
        total += u_pow / 2

        eps = mpmath.mpf(10) ** (-dps)
        u = mpmath.exp(log_u)
        inv_u2 = 1 / (u * u)
        rising = s  # s (s+1) ... (s + 2j - 2)
        power = u_pow / u  # u^{-s-2j+1}
        j = 1
        while True:
            term = _bernoulli_over_factorial(j, dps + 5) * rising * power
            total += term
            if abs(term) < eps * max(1, abs(total)):
                break
            if j > mpmath.pi * cutoff:
                raise NonConvergence(f"Hurwitz tail did not converge at cutoff {cutoff}")
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power *= inv_u2
            j += 1
        return total


def _check_pole(s, ctx: PrecisionContext) -> None:
    with mp.workdps(ctx.internal_digits):
        if abs(mpmath.mpc(s) - 1) < mpmath.mpf(10) ** (-ctx.working_digits):
            raise PoleAtOne(f"s = {mpmath.nstr(s, 10)} is at the pole s = 1")


def hurwitz_zeta(s, a, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """zeta(s, a) for rational 0 < a <= 1, s != 1."""
    a = as_rational(a)
    _check_pole(s, ctx)
    cutoff = hurwitz_cutoff(ctx)
    value, _ = stabilize(lambda dps: _hurwitz_em(s, a, dps, cutoff, regular=False), ctx)
    return value


def _l_raw(s, chi: DirichletCharacter, dps: int, cutoff: int):
    q = chi.modulus
    with mp.workdps(dps + 5):
        s = mpmath.mpc(s)
        terms = []
        for a in range(1, q + 1):
            if chi.angle(a) is None:
                continue
            terms.append(chi.value(a) * _hurwitz_em(s, Fraction(a, q), dps + 3, cutoff, regular=True))
        # the 1/(s-1) parts cancel because sum_a chi(a) = 0
        return mpmath.exp(-s * mpmath.log(q)) * mpmath.fsum(terms)


def l_eval(s, chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).

    For non-principal chi this is entire and s = 1 is allowed. The principal
    character mod 1 gives zeta(s) with its pole.
    """
    if chi.is_principal:
        if chi.modulus != 1:
            raise UnsupportedCharacter("principal characters mod q > 1 are not supported")
        return hurwitz_zeta(s, 1, ctx)
    cutoff = hurwitz_cutoff(ctx)
    value, _ = stabilize(lambda dps: _l_raw(s, chi, dps, cutoff), ctx)
    return value


def zeta_laurent_eval(s, N: int, table: StieltjesTable,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """1/(s-1) + sum_{n<=N} (-1)^n gamma_n / n! (s-1)^n."""
    if table.kind != "zeta":
        raise ValueError(f"expected a zeta table, got {table.kind}")
    missing = [n for n in range(N + 1) if n not in table]
    if missing:
        raise ValueError(f"table lacks entries for n = {missing}")
    _check_pole(s, ctx)
    with mp.workdps(ctx.internal_digits):
        z = mpmath.mpc(s) - 1
        total = 1 / z + _taylor_sum(z, table, N)
    with mp.workdps(ctx.working_digits):
        return +total


def _taylor_sum(z, table: StieltjesTable, N: int):
    # Horner in z
    acc = mpmath.mpc(0)
    for n in range(N, -1, -1):
        acc = acc * z + (-1) ** n * table[n] / mpmath.factorial(n)
    return acc


@dataclass(frozen=True)
class TaylorPlan:
    chi: DirichletCharacter
    N: int
    epsilon: mpmath.mpf
    table: StieltjesTable

    def __post_init__(self):
        missing = [n for n in range(self.N + 1) if n not in self.table]
        if missing:
            raise ValueError(f"table lacks entries for n = {missing}")


def make_taylor_plan(chi: DirichletCharacter, N: int, epsilon=None,
                     ctx: PrecisionContext = DEFAULT_CONTEXT) -> TaylorPlan:
    if epsilon is None:
        with mp.workdps(ctx.internal_digits):
            epsilon = mpmath.exp(-1)
    table = build_table("character", range(N + 1), ctx, chi=chi)
    return TaylorPlan(chi=chi, N=N, epsilon=epsilon, table=table)


def taylor_eval(s, plan: TaylorPlan, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """sum_{n<=N} (-1)^n gamma_n(chi)/n! (s-1)^n on the disk |s-1| <= epsilon."""
    if plan.chi.is_principal:
        raise UnsupportedCharacter("Taylor evaluation needs a non-principal character")
    with mp.workdps(ctx.internal_digits):
        z = mpmath.mpc(s) - 1
        slack = mpmath.mpf(10) ** (-ctx.working_digits)
        if abs(z) > plan.epsilon + slack:
            raise OutsideDisk(f"|s-1| = {mpmath.nstr(abs(z), 10)} exceeds "
                              f"{mpmath.nstr(plan.epsilon, 10)}")
        total = _taylor_sum(z, plan.table, plan.N)
    with mp.workdps(ctx.working_digits):
        return +total


def taylor_order(q: int) -> int:
    """Truncation order ceil(4 log q), natural logarithm."""
    with mp.workdps(30):
        return int(mpmath.ceil(4 * mpmath.log(q)))


def application_a_bound(q: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """32.3 / q^2.5, valid for q >= 150."""
    if q < TAYLOR_MIN_MODULUS:
        raise QTooSmall(f"q = {q} is below {TAYLOR_MIN_MODULUS}")
    with mp.workdps(ctx.working_digits):
        return mpmath.mpf(TAYLOR_BOUND_CONSTANT) / mpmath.mpf(q) ** mpmath.mpf(TAYLOR_BOUND_EXPONENT)


@dataclass(frozen=True)
class RemainderReport:
    s: mpmath.mpc
    truncated_value: mpmath.mpc
    direct_value: mpmath.mpc
    measured_remainder: mpmath.mpf
    certified_bound: mpmath.mpf

    @property
    def passed(self) -> bool:
        return self.measured_remainder <= self.certified_bound


def sample_points(count: int, radius, include_center: bool) -> list:
    """``count`` points on |s-1| = radius equally spaced in angle, from s = 1 + radius."""
    pts = [1 + radius * mpmath.expjpi(2 * mpmath.mpf(k) / count) for k in range(count)]
    if include_center:
        pts.append(mpmath.mpc(1))
    return pts


def verify_application_a(chi: DirichletCharacter, sample_count: int,
                         ctx: PrecisionContext = DEFAULT_CONTEXT,
                         include_center: bool | None = None,
                         plan: TaylorPlan | None = None) -> list[RemainderReport]:
    """Check |L(s,chi) - sum_{n<=N} ...| <= 32.3/q^2.5 on sample points.

    By default the center s = 1 is added whenever at least one boundary
    point is requested. Raises BoundViolated on the first failing sample.
    """
    q = chi.modulus
    bound = application_a_bound(q, ctx)
    if chi.is_principal or not chi.is_primitive:
        raise UnsupportedCharacter(f"character mod {q} must be primitive and non-principal")
    if sample_count < 0:
        raise ValueError("sample_count must be non-negative")
    if include_center is None:
        include_center = sample_count > 0
    if sample_count == 0 and not include_center:
        return []
    if plan is None:
        plan = make_taylor_plan(chi, taylor_order(q), ctx=ctx)
    with mp.workdps(ctx.internal_digits):
        points = sample_points(sample_count, plan.epsilon, include_center)
    reports = []
    for s in points:
        truncated = taylor_eval(s, plan, ctx)
        direct = l_eval(s, chi, ctx)
        with mp.workdps(ctx.working_digits):
            remainder = abs(direct - truncated)
        report = RemainderReport(s, truncated, direct, remainder, bound)
        if not report.passed:
            raise BoundViolated(
                f"remainder {mpmath.nstr(remainder, 5)} exceeds {mpmath.nstr(bound, 5)} "
                f"at s = {mpmath.nstr(s, 8)}", report)
        reports.append(report)
    return reports
