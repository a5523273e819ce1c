"""Dirichlet characters modulo q.

A character is stored as an exponent vector on a fixed list of generators of
(Z/qZ)^*: if g_i has order m_i and the vector entry is k_i, then
chi(g_i) = exp(2 pi i k_i / m_i). Values are exact rational angles, so they
can be rendered at any precision later.

Generators come from the prime-power factorization of q. An odd prime power
p^e contributes one primitive root; 4 contributes -1; 2^e with e >= 3
contributes the pair {-1, 5}. Each generator is lifted to Z/qZ by CRT
(congruent to 1 modulo the other prime-power factors).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

import mpmath

from .errors import ResourceLimit

MAX_MODULUS = 10**6


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (p, e) pairs in increasing p."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def primitive_root(p: int) -> int:
    """Smallest primitive root modulo an odd prime p."""
    if p == 2:
        return 1
    factors = [r for r, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class _Piece:
    """Cyclic factors of (Z/p^e)^* with a discrete-log table."""

    p: int
    e: int
    orders: tuple[int, ...]
    local_gens: tuple[int, ...]
    dlog: dict

    @property
    def pe(self) -> int:
        return self.p**self.e


def _build_piece(p: int, e: int) -> _Piece:
    pe = p**e
    if p == 2:
        if e == 1:
            return _Piece(2, 1, (), (), {1: ()})
        if e == 2:
            return _Piece(2, 2, (2,), (3,), {1: (0,), 3: (1,)})
        half = pe // 4
        dlog = {}
        x = 1
        for j in range(half):
            dlog[x] = (0, j)
            dlog[pe - x] = (1, j)
            x = x * 5 % pe
        return _Piece(2, e, (2, half), (pe - 1, 5), dlog)
    g = primitive_root(p)
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    order = pe - pe // p
    dlog = {}
    x = 1
    for j in range(order):
        dlog[x] = (j,)
        x = x * g % pe
    return _Piece(p, e, (order,), (g,), dlog)


@dataclass(frozen=True)
class UnitGroup:
    """Generator structure of (Z/qZ)^*."""

    modulus: int
    pieces: tuple[_Piece, ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for piece in self.pieces for o in piece.orders)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Generators lifted to residues mod q via CRT."""
        q = self.modulus
        gens = []
        for piece in self.pieces:
            rest = q // piece.pe
            for g in piece.local_gens:
                if rest == 1:
                    gens.append(g % q)
                    continue
                # x = g mod p^e, x = 1 mod rest
                t = (g - 1) * pow(rest, -1, piece.pe) % piece.pe
                gens.append((1 + rest * t) % q)
        return tuple(gens)

    def discrete_log(self, a: int) -> tuple[int, ...] | None:
        """Exponents of a on the generators, or None if gcd(a, q) > 1."""
        exps: list[int] = []
        for piece in self.pieces:
            r = a % piece.pe
            if r % piece.p == 0:
                return None
            exps.extend(piece.dlog[r])
        if self.modulus > 1 and gcd(a, self.modulus) != 1:
            return None
        return tuple(exps)


@lru_cache(maxsize=64)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise ValueError("modulus must be positive")
    if q > MAX_MODULUS:
        raise ResourceLimit(f"modulus {q} exceeds the configured maximum {MAX_MODULUS}")
    return UnitGroup(q, tuple(_build_piece(p, e) for p, e in factorize(q)))


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    modulus: int
    exponent_vector: tuple[int, ...]

    def __post_init__(self):
        orders = self.group.orders
        if len(self.exponent_vector) != len(orders):
            raise ValueError(f"expected {len(orders)} exponents for modulus {self.modulus}")
        object.__setattr__(self, "exponent_vector",
                           tuple(k % m for k, m in zip(self.exponent_vector, orders)))

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return (self.modulus, self.exponent_vector) == (other.modulus, other.exponent_vector)

    def __hash__(self):
        return hash((self.modulus, self.exponent_vector))

    def __repr__(self):
        return f"DirichletCharacter(q={self.modulus}, index={self.index})"

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    @property
    def q(self) -> int:
        return self.modulus

    @cached_property
    def index(self) -> int:
        """Lexicographic position of the exponent vector."""
        idx = 0
        for k, m in zip(self.exponent_vector, self.group.orders):
            idx = idx * m + k
        return idx

    @cached_property
    def _angles(self) -> tuple[Fraction | None, ...]:
        return tuple(self._compute_angle(a) for a in range(self.modulus))

    def _compute_angle(self, a: int) -> Fraction | None:
        exps = self.group.discrete_log(a)
        if exps is None:
            return None
        total = sum((Fraction(k * j, m) for k, j, m in
                     zip(self.exponent_vector, exps, self.group.orders)), Fraction(0))
        return total - (total.numerator // total.denominator)

    def angle(self, a: int) -> Fraction | None:
        """chi(a) = exp(2 pi i * angle); None when chi(a) = 0."""
        return self._angles[a % self.modulus]

    def value(self, a: int) -> mpmath.mpc:
        return root_of_unity(self.angle(a))

    __call__ = value

    @cached_property
    def order(self) -> int:
        den = 1
        for k, m in zip(self.exponent_vector, self.group.orders):
            f = Fraction(k, m)
            den = den * f.denominator // gcd(den, f.denominator)
        return den

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponent_vector)

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    @cached_property
    def conductor(self) -> int:
        return conductor(self)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def parity(self) -> int:
        """0 for even characters, 1 for odd ones."""
        if self.modulus <= 2:
            return 0
        return 0 if self.angle(-1) == 0 else 1

    @property
    def delta(self) -> int:
        """1 for the principal character, 0 otherwise."""
        return int(self.is_principal)


def root_of_unity(angle: Fraction | None) -> mpmath.mpc:
    if angle is None:
        return mpmath.mpc(0)
    exact = {Fraction(0): (1, 0), Fraction(1, 2): (-1, 0),
             Fraction(1, 4): (0, 1), Fraction(3, 4): (0, -1)}
    if angle in exact:
        return mpmath.mpc(*exact[angle])
    return mpmath.expjpi(2 * mpmath.mpf(angle.numerator) / angle.denominator)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, ordered by lexicographic exponent vector."""
    group = unit_group(q)
    return [DirichletCharacter(q, exps)
            for exps in itertools.product(*(range(m) for m in group.orders))]


def character(q: int, index: int) -> DirichletCharacter:
    """The character mod q at a given lexicographic index."""
    orders = unit_group(q).orders
    total = 1
    for m in orders:
        total *= m
    if not 0 <= index < total:
        raise IndexError(f"character index {index} out of range for modulus {q} ({total} characters)")
    exps = []
    for m in reversed(orders):
        index, k = divmod(index, m)
        exps.append(k)
    return DirichletCharacter(q, tuple(reversed(exps)))


def principal_character(q: int) -> DirichletCharacter:
    return character(q, 0)


def conductor(chi: DirichletCharacter) -> int:
    """Smallest d | q such that chi is trivial on units congruent to 1 mod d."""
    q = chi.modulus
    for d in divisors(q):
        if all(chi.angle(a) == 0 for a in range(1, q + 1, d) if gcd(a, q) == 1):
            return d
    return q


def value(chi: DirichletCharacter, a: int) -> mpmath.mpc:
    return chi.value(a)


def inducing_character(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = chi.conductor
    if f == chi.modulus:
        return chi
    q = chi.modulus
    for cand in enumerate_characters(f):
        if all(cand.angle(a) == chi.angle(a) for a in range(1, q) if gcd(a, q) == 1):
            return cand
    raise AssertionError("no inducing character found")


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in enumerate_characters(q) if chi.is_primitive]
