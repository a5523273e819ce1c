"""Independent reference computations used only by the tests.

Nothing here imports the package: each oracle takes a different route from
the code it checks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp

FIXED_BITS = 200


def _smallest_prime_factors(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


@lru_cache(maxsize=4)
def stieltjes_partial_sums(n_max: int, T: int, checkpoints: tuple[int, ...]) -> dict:
    """Exact-ish partial sums sum_{m<=t} log(m)^n / m at each checkpoint t.

    Fixed-point integers scaled by 2**FIXED_BITS; log m is assembled
    additively from logs of primes via the smallest-prime-factor sieve.
    """
    one = 1 << FIXED_BITS
    spf = _smallest_prime_factors(T)
    logs = [0] * (T + 1)
    with mp.workdps(80):
        for m in range(2, T + 1):
            p = spf[m]
            if p == m:
                logs[m] = int(mpmath.log(m) * one)
            else:
                logs[m] = logs[p] + logs[m // p]
    sums = [0] * (n_max + 1)
    wanted = set(checkpoints)
    out = {}
    for m in range(1, T + 1):
        term = one // m
        L = logs[m]
        for n in range(n_max + 1):
            sums[n] += term
            term = term * L >> FIXED_BITS
        if m in wanted:
            out[m] = list(sums)
    return out


def limit_definition_stieltjes(n: int, T: int = 10**6) -> mpmath.mpf:
    """gamma_n from the raw limit, T <= 10**6, with a generalized Richardson step.

    S(t) - log(t)^{n+1}/(n+1) - gamma_n is fitted by the basis
    {log(t)^j / t, log(t)^j / t^2 : j <= n}, eliminated exactly by solving a
    square linear system over 2n+3 checkpoints in [T/10, T].
    """
    k = 2 * n + 3
    checkpoints = tuple(sorted({int(T / 10 ** (i / (k - 1))) for i in range(k)}))
    assert len(checkpoints) == k
    sums = stieltjes_partial_sums(5, T, checkpoints) if n <= 5 else \
        stieltjes_partial_sums(n, T, checkpoints)
    with mp.workdps(60):
        one = mpmath.mpf(2) ** FIXED_BITS
        rows, rhs = [], []
        for t in checkpoints:
            L = mpmath.log(t)
            rhs.append(mpmath.mpf(sums[t][n]) / one - L ** (n + 1) / (n + 1))
            rows.append([1] + [L ** j / t for j in range(n + 1)] + [L ** j / t**2 for j in range(n + 1)])
        sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        return sol[0]


def akiyama_tanigawa(n: int) -> Fraction:
    """B_n with the B_1 = +1/2 convention."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def log2_series(digits: int) -> mpmath.mpf:
    """log 2 = sum_{k>=1} 1/(k 2^k), summed exactly in rationals."""
    total = Fraction(0)
    k = 1
    bound = Fraction(1, 10 ** (digits + 5))
    while True:
        term = Fraction(1, k * 2**k)
        total += term
        if term < bound:
            break
        k += 1
    with mp.workdps(digits + 5):
        return mpmath.mpf(total.numerator) / total.denominator


def character_values_brute_force(q: int) -> list[tuple]:
    """All completely multiplicative q-periodic functions on units mod q,
    as value tuples over a = 0..q-1 with values in exact roots of unity.

    Values are represented as Fractions k/e meaning exp(2 pi i k/e), None for 0.
    """
    from math import gcd
    units = [a for a in range(1, q) if gcd(a, q) == 1] or [0]
    if q == 1:
        return [(Fraction(0),)]
    # exponent of the group bounds the orders of values
    e = 1
    for a in units:
        o, x = 1, a % q
        while x != 1 % q:
            x = x * a % q
            o += 1
        e = e * o // gcd(e, o)
    import itertools
    results = []
    others = [a for a in units if a != 1]
    for assignment in itertools.product(range(e), repeat=len(others)):
        vals = {1: Fraction(0)}
        vals.update({a: Fraction(k, e) for a, k in zip(others, assignment)})
        ok = True
        for a in units:
            for b in units:
                c = a * b % q
                if (vals[a] + vals[b] - vals[c]) % 1 != 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            results.append(tuple(vals.get(a) if a in vals else None for a in range(q)))
    return results


def cauchy_taylor_coefficients(f, center, radius, count: int, K: int = 64) -> list:
    """Taylor coefficients of an analytic f by the trapezoid rule on a circle."""
    pts = [f(center + radius * mpmath.expjpi(2 * mpmath.mpf(k) / K)) for k in range(K)]
    return [mpmath.fsum(pts[k] * mpmath.expjpi(-2 * mpmath.mpf(k) * n / K) for k in range(K)) / K / radius**n
            for n in range(count)]


def leibniz_l(s, terms_digits: int = 30):
    """L(s, chi_4) = sum (-1)^k (2k+1)^{-s} by alternating-series acceleration."""
    return mpmath.nsum(lambda k: (-1) ** int(k) * (2 * k + 1) ** (-s), [0, mpmath.inf])
