"""Explicit upper bounds for |gamma_n(chi)|/n! and their auxiliary inequalities.

With primitive chi mod q, n >= 2 and 1 <= q < (pi/2) e^{(n+1)/2}/(n+1):

    |gamma_n(chi)|/n! <= q^{-1/2} C(n,q) min(1 + D(n,q), pi^2/6)

    theta(n,q) = (n+1)/log(2q(n+1)/pi) - 1
    C(n,q)     = 2 sqrt 2 exp(-(n+1) log theta + theta log(2 q theta/(pi e)))
    D(n,q)     = 2^{-theta-1} (theta+1)/(theta-1)

The q-range hypothesis is equivalent to theta > 1. Everything that can
overflow is evaluated in log space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from . import constants as K
from .errors import DomainError, NoCrossover, PreconditionViolated
from .numerics import DEFAULT_CONTEXT, PrecisionContext


def _mpf(x) -> mpmath.mpf:
    return mpmath.mpf(x)


def theta(n, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """(n+1)/log(2q(n+1)/pi) - 1; n may be real."""
    with mp.workdps(ctx.internal_digits):
        arg = 2 * _mpf(q) * (_mpf(n) + 1) / mpmath.pi
        if arg <= 1:
            raise DomainError(f"log argument 2q(n+1)/pi = {mpmath.nstr(arg, 8)} must exceed 1")
        return (_mpf(n) + 1) / mpmath.log(arg) - 1


def h_value(n, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """H = 2q(n+1)/pi (called M when q = 1)."""
    with mp.workdps(ctx.internal_digits):
        return 2 * _mpf(q) * (_mpf(n) + 1) / mpmath.pi


def d_from_theta(th) -> mpmath.mpf:
    if th <= 1:
        raise DomainError(f"D is undefined for theta = {mpmath.nstr(th, 8)} <= 1")
    return mpmath.power(2, -th - 1) * (th + 1) / (th - 1)


def d_term(n, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with mp.workdps(ctx.internal_digits):
        return d_from_theta(theta(n, q, ctx))


def log_c_term(n, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with mp.workdps(ctx.internal_digits):
        th = theta(n, q, ctx)
        if th <= 0:
            raise DomainError(f"C needs theta > 0, got {mpmath.nstr(th, 8)}")
        exponent = -(_mpf(n) + 1) * mpmath.log(th) \
            + th * mpmath.log(2 * _mpf(q) * th / (mpmath.pi * mpmath.e))
        return mpmath.log(2 * mpmath.sqrt(2)) + exponent


def c_term(n, q, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with mp.workdps(ctx.internal_digits):
        return mpmath.exp(log_c_term(n, q, ctx))


def q_range_limit(n, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """(pi/2) e^{(n+1)/2}/(n+1)."""
    with mp.workdps(ctx.internal_digits):
        return mpmath.pi / 2 * mpmath.exp((_mpf(n) + 1) / 2) / (_mpf(n) + 1)


@dataclass(frozen=True)
class Theorem1Bound:
    n: int
    q: int
    theta: mpmath.mpf
    c_term: mpmath.mpf
    d_term: mpmath.mpf
    h_value: mpmath.mpf
    combined: mpmath.mpf
    log_combined: mpmath.mpf

    @property
    def min_factor(self) -> mpmath.mpf:
        return min(1 + self.d_term, mpmath.pi ** 2 / 6)


def theorem1_bound(n: int, q: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Theorem1Bound:
    """Upper bound for |gamma_n(chi)|/n!, chi primitive mod q."""
    if n < K.MIN_N:
        raise PreconditionViolated("n-range", f"n = {n} but the bound needs n >= {K.MIN_N}")
    if q < 1:
        raise PreconditionViolated("q-range", f"q = {q} must be >= 1")
    limit = q_range_limit(n, ctx)
    if not q < limit:
        raise PreconditionViolated(
            "q-range", f"q = {q} but the bound needs q < (pi/2) e^((n+1)/2)/(n+1) = "
                       f"{mpmath.nstr(limit, 6)}")
    with mp.workdps(ctx.internal_digits):
        th = theta(n, q, ctx)
        d = d_from_theta(th)
        log_c = log_c_term(n, q, ctx)
        factor = min(1 + d, mpmath.pi ** 2 / 6)
        log_combined = log_c + mpmath.log(factor) - mpmath.log(q) / 2
        fields = dict(theta=th, c_term=mpmath.exp(log_c), d_term=d,
                      h_value=h_value(n, q, ctx), combined=mpmath.exp(log_combined),
                      log_combined=log_combined)
    with mp.workdps(ctx.working_digits):
        fields = {k: +v for k, v in fields.items()}
    return Theorem1Bound(n=n, q=q, **fields)


def log_matsuoka_bound(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    if n < K.MATSUOKA_MIN_N:
        raise PreconditionViolated("n-range", f"the prior bound holds for n >= {K.MATSUOKA_MIN_N}")
    with mp.workdps(ctx.internal_digits):
        return mpmath.log(_mpf(K.MATSUOKA_SCALE)) + n * mpmath.log(mpmath.log(n))


def matsuoka_bound(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """1e-4 exp(n log log n)."""
    log_value = log_matsuoka_bound(n, ctx)
    with mp.workdps(ctx.internal_digits):
        value = mpmath.exp(log_value)
    with mp.workdps(ctx.working_digits):
        return +value


def log_ratio(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """log(n! * explicit bound) - log(prior bound), q = 1."""
    b = theorem1_bound(n, 1, ctx)
    with mp.workdps(ctx.internal_digits):
        return b.log_combined + mpmath.loggamma(n + 1) - log_matsuoka_bound(n, ctx)


def crossover(q: int, n_max: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """Smallest n in [10, n_max] from which the explicit bound beats the prior one up to n_max."""
    if q != 1:
        raise PreconditionViolated("q-range", "the comparison is only defined for q = 1")
    if n_max < K.TAIL_START_N:
        raise PreconditionViolated("n_max", f"n_max = {n_max} must be >= {K.TAIL_START_N}")
    best = None
    for n in range(n_max, K.MATSUOKA_MIN_N - 1, -1):
        if log_ratio(n, ctx) < 0:
            best = n
        else:
            break
    if best is None:
        raise NoCrossover(f"the explicit bound does not beat the prior one at n = {n_max}")
    return best


@dataclass
class InequalityCheck:
    name: str
    passed: bool = True
    worst_margin: mpmath.mpf | None = None
    worst_at: object = None
    failures: list = field(default_factory=list)
    points: int = 0

    def record(self, margin, where) -> None:
        """A non-negative margin means the inequality holds at ``where``."""
        self.points += 1
        if self.worst_margin is None or margin < self.worst_margin:
            self.worst_margin, self.worst_at = margin, where
        if margin < 0:
            self.passed = False
            self.failures.append(where)


@dataclass
class ProofConstantsReport:
    checks: list[InequalityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> InequalityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


TAYLOR_Q_GRID = (150, 151, 500, 10**4)


def verify_proof_constants(n_min: int = K.TAIL_START_N, n_max: int = 500,
                           q_values=TAYLOR_Q_GRID,
                           ctx: PrecisionContext = DEFAULT_CONTEXT) -> ProofConstantsReport:
    """Grid check of the inequalities behind the tail and Taylor estimates.

    q = 1, n_min <= n <= n_max:
      theta_floor   theta(n,1) >= 5.1513
      d_ceiling     D(n,1) <= 0.0209
      log_slope     theta log(2 theta/(pi e)) <= 0.1728 (n+1) where M = 2(n+1)/pi >= 8.2760
      tail_factor   the resulting bound 2.8876 (e^0.1728/5.1513)^{n+1} dominates
                    q^{-1/2} C(n,1) min(1+D, pi^2/6)
    q in q_values, n + 1 = ceil(4 log q):
      taylor_theta  theta(n,q) >= 1.65
      taylor_d      D(n,q) <= 0.65
      taylor_slope  theta (log theta + log(2q/(pi e))) <= n+1 where H >= 1.45
    """
    if n_min < K.TAIL_START_N:
        raise PreconditionViolated("n-range", f"n_min = {n_min} must be >= {K.TAIL_START_N}")
    checks = {name: InequalityCheck(name) for name in
              ("theta_floor", "d_ceiling", "log_slope", "tail_factor",
               "taylor_theta", "taylor_d", "taylor_slope")}
    with mp.workdps(ctx.internal_digits):
        theta_floor = _mpf(K.THETA_FLOOR_Q1)
        d_ceiling = _mpf(K.D_CEILING_Q1)
        slope = _mpf(K.LOG_SLOPE)
        m_threshold = _mpf(K.M_THRESHOLD)
        ratio = mpmath.exp(slope) / theta_floor
        log_tail_factor = mpmath.log(_mpf(K.TAIL_FACTOR))
        for n in range(n_min, n_max + 1):
            th = theta(n, 1, ctx)
            checks["theta_floor"].record(th - theta_floor, n)
            checks["d_ceiling"].record(d_ceiling - d_from_theta(th), n)
            if h_value(n, 1, ctx) >= m_threshold:
                lhs = th * mpmath.log(2 * th / (mpmath.pi * mpmath.e))
                checks["log_slope"].record(slope * (n + 1) - lhs, n)
            b = theorem1_bound(n, 1, ctx)
            checks["tail_factor"].record(
                log_tail_factor + (n + 1) * mpmath.log(ratio) - b.log_combined, n)

        for q in q_values:
            n = int(mpmath.ceil(4 * mpmath.log(q))) - 1
            th = theta(n, q, ctx)
            checks["taylor_theta"].record(th - _mpf(K.THETA_FLOOR_TAYLOR), (q, n))
            checks["taylor_d"].record(_mpf(K.D_CEILING_TAYLOR) - d_from_theta(th), (q, n))
            if h_value(n, q, ctx) >= _mpf(K.H_THRESHOLD):
                lhs = th * (mpmath.log(th) + mpmath.log(2 * _mpf(q) / (mpmath.pi * mpmath.e)))
                checks["taylor_slope"].record((n + 1) - lhs, (q, n))
    return ProofConstantsReport(list(checks.values()))
