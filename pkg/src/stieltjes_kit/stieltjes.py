"""Stieltjes constants of zeta, Hurwitz zeta and Dirichlet L-functions.

The generalized constant gamma_n(a) is the limit

    gamma_n(a) = lim_{M -> oo} sum_{k=0}^{M-1} f_n(k) - log(M + a)^{n+1} / (n + 1),
    f_n(x) = log(x + a)^n / (x + a).

After summing the first M terms directly, the remaining sum is replaced by its
Euler-Maclaurin expansion at x = M: the regularized integral
-log(M+a)^{n+1}/(n+1), the boundary term f_n(M)/2 and the corrections
-B_{2j}/(2j)! f_n^{(2j-1)}(M).

Derivatives come from a closed form rather than numeric differentiation.
With u = x + a, L = log u and P_r(t) = (t-1)(t-2)...(t-r):

    f_n^{(r)}(u) = u^{-1-r} sum_k n!/(n-k)! [t^k]P_r(t) L^{n-k}

(differentiate u^{t-1} r times in u, then n times in t at t = 0). The
coefficients of P_r are integers and are cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Union

import mpmath
from mpmath import mp

from .characters import DirichletCharacter, inducing_character, factorize
from .errors import (NonConvergence, PrecisionTooLow, ResourceLimit,
                     UnsupportedCharacter)
from .numerics import (DEFAULT_CONTEXT, PrecisionContext, bernoulli,
                       fraction_to_mpf, stabilize)

MAX_N = 200
MAX_RETRIES = 3
# cancellation allowance beyond which a request is refused
MAX_EXTRA_DIGITS = 2000

Rational = Union[Fraction, int, str]


def as_rational(a: Rational) -> Fraction:
    a = Fraction(a)
    if not 0 < a <= 1:
        raise ValueError(f"Hurwitz parameter must lie in (0, 1], got {a}")
    return a


def default_cutoff(ctx: PrecisionContext) -> int:
    return max(50, 3 * ctx.working_digits)


@lru_cache(maxsize=None)
def falling_poly(r: int) -> tuple[int, ...]:
    """Integer coefficients of (t-1)(t-2)...(t-r), lowest degree first."""
    if r == 0:
        return (1,)
    prev = falling_poly(r - 1)
    out = [0] * (r + 1)
    for k, c in enumerate(prev):
        out[k + 1] += c
        out[k] -= r * c
    return tuple(out)


@lru_cache(maxsize=None)
def _derivative_coeffs(n: int, r: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (power of L, integer coefficient) pairs of f_n^{(r)} * u^{1+r}."""
    poly = falling_poly(r)
    out = []
    falling = 1  # n!/(n-k)!
    for k in range(min(n, r) + 1):
        if k:
            falling *= n - k + 1
        c = falling * poly[k]
        if c:
            out.append((n - k, c))
    return tuple(out)


@lru_cache(maxsize=None)
def _bernoulli_weight(j: int, dps: int) -> mpmath.mpf:
    with mp.workdps(dps):
        return fraction_to_mpf(bernoulli(2 * j) / factorial(2 * j))


def _extra_digits(nmax: int, a: Fraction, cutoff: int) -> int:
    """Digits lost to cancellation between the partial sum and the integral."""
    with mp.workdps(20):
        am = fraction_to_mpf(a)
        big = mpmath.log(cutoff + am) ** (nmax + 1) / (nmax + 1)
        big = max(big, abs(mpmath.log(am)) ** nmax / am, mpmath.mpf(1))
        return int(mpmath.ceil(mpmath.log10(big))) + 3


@lru_cache(maxsize=4096)
def _hurwitz_constants_raw(nmax: int, a: Fraction, dps: int, cutoff: int) -> tuple:
    """gamma_0(a) .. gamma_nmax(a) with absolute error about 10**-dps."""
    extra = _extra_digits(nmax, a, cutoff)
    if extra > MAX_EXTRA_DIGITS:
        raise PrecisionTooLow(f"n={nmax} needs {extra} extra digits at cutoff {cutoff}")
    with mp.workdps(dps + extra):
        am = fraction_to_mpf(a)
        sums = [mpmath.mpf(0)] * (nmax + 1)
        for k in range(cutoff):
            u = k + am
            log_u = mpmath.log(u)
            term = 1 / u
            for n in range(nmax + 1):
                sums[n] += term
                term *= log_u

        u = cutoff + am
        log_u = mpmath.log(u)
        powers = [mpmath.mpf(1)]
        for _ in range(nmax + 1):
            powers.append(powers[-1] * log_u)
        inv_u = 1 / u
        result = [sums[n] - powers[n + 1] / (n + 1) + powers[n] * inv_u / 2
                  for n in range(nmax + 1)]

        eps = mpmath.mpf(10) ** (-dps)
        u_pow = inv_u * inv_u  # u^{-1-r} for r = 1
        inv_u2 = inv_u * inv_u
        active = set(range(nmax + 1))
        # the asymptotic series turns around once 2j passes 2*pi*u
        j_limit = int(mpmath.pi * cutoff)
        j = 1
        while active:
            if j > j_limit:
                raise NonConvergence(
                    f"Euler-Maclaurin tail did not reach 1e-{dps} at cutoff {cutoff}")
            r = 2 * j - 1
            weight = _bernoulli_weight(j, dps + extra)
            for n in list(active):
                poly = mpmath.fsum(c * powers[p] for p, c in _derivative_coeffs(n, r))
                term = weight * poly * u_pow
                result[n] -= term
                if abs(term) < eps:
                    active.discard(n)
            u_pow *= inv_u2
            j += 1
        return tuple(result)


def _with_retries(make, ctx: PrecisionContext):
    cutoff = default_cutoff(ctx)
    for attempt in range(MAX_RETRIES + 1):
        try:
            return stabilize(lambda dps: make(dps, cutoff), ctx)
        except NonConvergence:
            if attempt == MAX_RETRIES:
                raise
            cutoff *= 2


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_N:
        raise ResourceLimit(f"n={n} exceeds the configured maximum {MAX_N}")


def hurwitz_constants(nmax: int, a: Rational, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(values, error estimates) for gamma_0(a) .. gamma_nmax(a)."""
    _check_n(nmax)
    a = as_rational(a)
    return _with_retries(lambda dps, cutoff: list(_hurwitz_constants_raw(nmax, a, dps, cutoff)), ctx)


def gamma_hurwitz(n: int, a: Rational, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Generalized Stieltjes constant gamma_n(a), 0 < a <= 1."""
    values, _ = hurwitz_constants(n, a, ctx)
    return values[n]


def gamma_zeta(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Stieltjes constant gamma_n of the Riemann zeta function."""
    return gamma_hurwitz(n, 1, ctx)


def _check_character(chi: DirichletCharacter, nmax: int) -> None:
    if chi.is_principal and chi.modulus > 1:
        raise UnsupportedCharacter(
            f"principal character mod {chi.modulus}: only the principal character mod 1 is supported")
    if not chi.is_primitive and nmax > 0:
        raise UnsupportedCharacter(
            f"character mod {chi.modulus} is imprimitive (conductor {chi.conductor}); "
            "only n = 0 is available for imprimitive characters")


def _character_constants_raw(nmax: int, chi: DirichletCharacter, dps: int, cutoff: int) -> list:
    """gamma_n(chi) = q^{-1} sum_k C(n,k) log(q)^{n-k} sum_a chi(a) gamma_k(a/q)."""
    q = chi.modulus
    with mp.workdps(dps + 5):
        chi_vals = {a: chi.value(a) for a in range(1, q + 1) if chi.angle(a) is not None}
    # the combination divides by q and adds log q powers; keep the same absolute accuracy
    inner = dps + len(str(q)) + 2
    per_a = {a: _hurwitz_constants_raw(nmax, Fraction(a, q), inner, cutoff) for a in chi_vals}
    with mp.workdps(inner + 5):
        G = [mpmath.fsum(chi_vals[a] * per_a[a][k] for a in chi_vals) for k in range(nmax + 1)]
        log_q = mpmath.log(q)
        out = []
        for n in range(nmax + 1):
            total = mpmath.fsum(mpmath.binomial(n, k) * log_q ** (n - k) * G[k]
                                for k in range(n + 1))
            out.append(total / q)
        if chi.is_real:
            out = [mpmath.mpc(v.real, 0) for v in out]
    return out


def _euler_factor_correction(chi: DirichletCharacter, dps: int) -> mpmath.mpc:
    """prod over p | q, p not dividing the conductor, of (1 - chi*(p)/p)."""
    prim = inducing_character(chi)
    with mp.workdps(dps):
        out = mpmath.mpc(1)
        for p, _ in factorize(chi.modulus):
            if prim.modulus % p:
                out *= 1 - prim.value(p) / p
        return out


def character_constants(nmax: int, chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(values, error estimates) for gamma_0(chi) .. gamma_nmax(chi)."""
    _check_n(nmax)
    _check_character(chi, nmax)
    if chi.modulus == 1:
        values, errors = hurwitz_constants(nmax, 1, ctx)
        with mp.workdps(ctx.working_digits):
            return [mpmath.mpc(v) for v in values], errors
    if not chi.is_primitive:
        prim = inducing_character(chi)

        def make(dps, cutoff):
            base = _character_constants_raw(0, prim, dps, cutoff)[0]
            with mp.workdps(dps + 5):
                return [base * _euler_factor_correction(chi, dps + 5)]
        return _with_retries(make, ctx)
    return _with_retries(lambda dps, cutoff: _character_constants_raw(nmax, chi, dps, cutoff), ctx)


def gamma_chi(n: int, chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """gamma_n(chi); for non-principal chi this is (-1)^n L^{(n)}(1, chi)."""
    values, _ = character_constants(n, chi, ctx)
    return values[n]


def gamma_over_factorial(n: int, chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """|gamma_n(chi)| / n!"""
    g = gamma_chi(n, chi, ctx)
    with mp.workdps(ctx.internal_digits):
        if n > 50:
            out = mpmath.exp(mpmath.log(abs(g)) - mpmath.loggamma(n + 1))
        else:
            out = abs(g) / mpmath.factorial(n)
    with mp.workdps(ctx.working_digits):
        return +out


@dataclass(frozen=True)
class StieltjesTable:
    """Computed Stieltjes constants of one kind, indexed by n.

    ``kind`` is ``"zeta"``, ``"hurwitz"`` or ``"character"``; ``a`` holds the
    Hurwitz parameter and ``chi`` the character where relevant.
    """

    kind: str
    entries: dict[int, mpmath.mpc]
    error_estimates: dict[int, mpmath.mpf]
    precision: PrecisionContext
    a: Fraction | None = None
    chi: DirichletCharacter | None = None
    provenance: str = "euler-maclaurin"
    notes: tuple[str, ...] = field(default=())

    def __getitem__(self, n: int) -> mpmath.mpc:
        return self.entries[n]

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def real(self, n: int) -> mpmath.mpf:
        return self.entries[n].real

    @property
    def n_values(self) -> list[int]:
        return sorted(self.entries)

    def truncated(self, nmax: int) -> "StieltjesTable":
        keep = {n: v for n, v in self.entries.items() if n <= nmax}
        errs = {n: v for n, v in self.error_estimates.items() if n <= nmax}
        return replace(self, entries=keep, error_estimates=errs)

    def with_entry(self, n: int, value, note: str = "") -> "StieltjesTable":
        """Copy with one entry overwritten (used for fault injection)."""
        entries = dict(self.entries)
        with mp.workdps(self.precision.working_digits):
            entries[n] = mpmath.mpc(value)
        notes = self.notes + ((note,) if note else ())
        return replace(self, entries=entries, provenance="modified", notes=notes)

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.a is not None:
            out["a"] = str(self.a)
        if self.chi is not None:
            out["q"] = self.chi.modulus
            out["index"] = self.chi.index
        return out


def build_table(kind: str, n_values: Iterable[int], ctx: PrecisionContext = DEFAULT_CONTEXT,
                a: Rational | None = None, chi: DirichletCharacter | None = None) -> StieltjesTable:
    n_values = sorted(set(n_values))
    if not n_values:
        raise ValueError("no n requested")
    nmax = n_values[-1]
    if kind == "zeta":
        values, errors = hurwitz_constants(nmax, 1, ctx)
    elif kind == "hurwitz":
        a = as_rational(a if a is not None else 1)
        values, errors = hurwitz_constants(nmax, a, ctx)
    elif kind == "character":
        if chi is None:
            raise ValueError("character table needs chi")
        values, errors = character_constants(nmax, chi, ctx)
    else:
        raise ValueError(f"unknown table kind {kind!r}")
    with mp.workdps(ctx.working_digits):
        entries = {n: mpmath.mpc(values[n]) for n in n_values}
    return StieltjesTable(kind=kind,
                          entries=entries,
                          error_estimates={n: errors[n] for n in n_values if n < len(errors)},
                          precision=ctx, a=a, chi=chi)


def zeta_table(nmax: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> StieltjesTable:
    return build_table("zeta", range(nmax + 1), ctx)
