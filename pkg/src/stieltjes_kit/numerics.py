"""Arbitrary-precision plumbing shared by every other module.

Real and complex numbers are ``mpmath.mpf`` / ``mpmath.mpc``; precision is
always counted in decimal digits.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from math import comb
from typing import Callable, Sequence, Union

import mpmath
from mpmath import mp

from .errors import NonConvergence

BigReal = mpmath.mpf
BigComplex = mpmath.mpc
Number = Union[mpmath.mpf, mpmath.mpc]


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the guard digits used for intermediate work."""

    working_digits: int = 50
    guard_digits: int = 10

    def __post_init__(self):
        if self.working_digits < 10:
            raise ValueError("working_digits must be >= 10")
        if self.guard_digits < 5:
            raise ValueError("guard_digits must be >= 5")

    @property
    def internal_digits(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def tolerance(self) -> mpmath.mpf:
        """Largest acceptable disagreement between the two stabilize runs."""
        with mp.workdps(self.internal_digits):
            return mpmath.mpf(10) ** (-(self.working_digits // 2))

    def raised(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.working_digits + extra, self.guard_digits)


DEFAULT_CONTEXT = PrecisionContext()


class BernoulliCache:
    """Write-once memo table of Bernoulli numbers as exact fractions.

    Uses the convention B_1 = -1/2. Safe to share between threads.
    """

    def __init__(self):
        self._values: dict[int, Fraction] = {0: Fraction(1), 1: Fraction(-1, 2)}
        self._highest_even = 0
        self._lock = threading.Lock()

    def get(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("Bernoulli index must be non-negative")
        if k >= 3 and k % 2:
            return Fraction(0)
        value = self._values.get(k)
        if value is not None:
            return value
        with self._lock:
            self._extend(k)
        return self._values[k]

    def _extend(self, k: int) -> None:
        # sum_{j=0}^{m} C(m+1, j) B_j = 0 with only the even B_j and B_1 nonzero
        for m in range(self._highest_even + 2, k + 1, 2):
            acc = Fraction(comb(m + 1, 1)) * self._values[1]
            for j in range(0, m, 2):
                acc += comb(m + 1, j) * self._values[j]
            self._values.setdefault(m, -acc / (m + 1))
            self._highest_even = m

    def __contains__(self, k: int) -> bool:
        return k in self._values


_DEFAULT_BERNOULLI = BernoulliCache()


def bernoulli(k: int, cache: BernoulliCache | None = None) -> Fraction:
    """Return the Bernoulli number B_k (B_1 = -1/2) as an exact fraction."""
    return (cache or _DEFAULT_BERNOULLI).get(k)


def fraction_to_mpf(x: Fraction | int) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def round_to(x, digits: int):
    """Round an mpf/mpc (or a list of them) to ``digits`` decimal digits."""
    if isinstance(x, (list, tuple)):
        return [round_to(v, digits) for v in x]
    with mp.workdps(digits):
        return +x


def _distance(a, b) -> mpmath.mpf:
    return abs(a - b) / max(mpmath.mpf(1), abs(b))


def stabilize(computation: Callable[[int], Number | Sequence[Number]],
              ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Run ``computation`` at two precisions and compare.

    ``computation`` receives a decimal-digit count and returns a number or a
    sequence of numbers. It is run at ``working + guard`` and at
    ``working + 2*guard`` digits. Returns the higher-precision result rounded
    to ``working_digits`` together with the absolute difference (elementwise
    for sequences).

    Raises NonConvergence when the relative disagreement (relative to
    ``max(1, |value|)``) exceeds ``10**(-working_digits/2)``.
    """
    low = computation(ctx.internal_digits)
    high = computation(ctx.internal_digits + ctx.guard_digits)
    scalar = not isinstance(high, (list, tuple))
    if scalar:
        low, high = [low], [high]
    if len(low) != len(high):
        raise NonConvergence("computation returned different lengths at two precisions")
    tol = ctx.tolerance
    with mp.workdps(ctx.internal_digits + ctx.guard_digits):
        errors = [abs(h - l) for l, h in zip(low, high)]
        for i, (l, h) in enumerate(zip(low, high)):
            if _distance(l, h) > tol:
                raise NonConvergence(
                    f"results at {ctx.internal_digits} and "
                    f"{ctx.internal_digits + ctx.guard_digits} digits differ by "
                    f"{mpmath.nstr(errors[i], 5)} (entry {i})")
    values = round_to(high, ctx.working_digits)
    errors = round_to(errors, ctx.working_digits)
    if scalar:
        return values[0], errors[0]
    return values, errors


def to_decimal(x: mpmath.mpf) -> Decimal:
    """Exact decimal expansion of a binary mpf."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        return Decimal(str(x))
    sign, man, exp, _ = x._mpf_
    man = int(man)
    if man == 0:
        return Decimal(0)
    if sign:
        man = -man
    if exp >= 0:
        return Decimal(man << exp)
    t = Decimal(man * 5 ** (-exp)).as_tuple()
    return Decimal((t.sign, t.digits, t.exponent + exp))


def render(x, digits: int) -> str:
    """Decimal string of an mpf, round-half-even to ``digits`` significant digits."""
    d = to_decimal(x)
    if d == 0:
        return "0"
    return str(Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(d))
