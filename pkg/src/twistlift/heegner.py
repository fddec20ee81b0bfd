"""Twisted Heegner divisors on X_0(N).

A stratum is the set of lattice vectors of fixed positive norm inside
a fixed coset of the discriminant group. Its Gamma_0(N) orbits give CM
points weighted by 2/|stabilizer| and signed by the genus character;
both w and -w contribute, so the coset and its negative are listed
together.

Orbit enumeration is exact rather than windowed. A vector with c > 0
is the positive definite form [Nc, -b, a], conjugation acts by right
composition, and the Gamma_0(N) classes inside one SL_2(Z) class
correspond to orbits of the form's automorphisms on P^1(Z/N) through
the first column of the composing matrix. Listing reduced forms times
projective orbits therefore hits every class exactly once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .genus import genus_character
from .lattice import (
    IDENTITY,
    LatticeVector,
    Mat,
    UpperHalfPoint,
    form_autos,
    point_of_vector,
    stabilizer_order,
)
from .ntheory import euler_phi, is_fundamental_discriminant


def _stratum_integral(level: int, n, mu: int) -> None:
    ratio = Fraction(n) + Fraction(mu * mu, 4 * level)
    if ratio.denominator != 1:
        raise ValueError(
            f"index {n} does not lie in Q({mu}) + Z at level {level}"
        )


def reduced_positive_forms(disc: int) -> list[tuple[int, int, int]]:
    """All Gauss reduced positive forms of the given negative discriminant,
    imprimitive ones included."""
    if disc >= 0:
        raise ValueError("need a negative discriminant")
    forms = []
    for a in range(1, math.isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            forms.append((a, b, c))
    return forms


def _compose(form: tuple[int, int, int], u: Mat) -> tuple[int, int, int]:
    fa, fb, fc = form
    p, q, r, s = u
    return (
        fa * p * p + fb * p * r + fc * r * r,
        2 * fa * p * q + fb * (p * s + q * r) + 2 * fc * r * s,
        fa * q * q + fb * q * s + fc * s * s,
    )


@lru_cache(maxsize=None)
def _units(level: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, level) if math.gcd(u, level) == 1)


def _canon_p1(level: int, p: int, r: int) -> tuple[int, int]:
    return min((p * u % level, r * u % level) for u in _units(level))


@lru_cache(maxsize=None)
def projective_line(level: int) -> tuple[tuple[int, int], ...]:
    """Canonical representatives of P^1(Z/N); indexes Gamma_0(N)\\SL_2(Z)."""
    if level == 1:
        return ((0, 0),)
    seen: set[tuple[int, int]] = set()
    pts = []
    for p in range(level):
        for r in range(level):
            if math.gcd(math.gcd(p, r), level) != 1:
                continue
            canon = _canon_p1(level, p, r)
            if canon not in seen:
                seen.add(canon)
                pts.append(canon)
    return tuple(pts)


def lift_to_sl2(level: int, p: int, r: int) -> Mat:
    # integer matrix with determinant one whose first column is (p, r) mod N
    if level == 1:
        return IDENTITY
    if r == 0:
        r = level
    while math.gcd(p, r) != 1:
        p += level
    s, q, g = 1, 0, p
    old_s, old_q, old_g = 0, 1, r
    while old_g:
        t = g // old_g
        s, old_s = old_s, s - t * old_s
        q, old_q = old_q, q - t * old_q
        g, old_g = old_g, g - t * old_g
    # now s*p + q*r = 1
    return (p, -q, r, s)


def heegner_vectors(level: int, disc: int, coset: int) -> list[LatticeVector]:
    """Orbit representatives with c > 0 of fixed discriminant and coset.

    Exactly one vector per Gamma_0(N) class; completeness comes from
    the reduced form times projective orbit parametrization, which the
    tests cross-check against a direct windowed scan.
    """
    if disc >= 0:
        raise ValueError("need a negative discriminant")
    two_n = 2 * level
    want = coset % two_n
    out: list[LatticeVector] = []
    for g in reduced_positive_forms(disc):
        if level == 1:
            if (-g[1]) % 2 == want:
                out.append(LatticeVector(g[2], -g[1], g[0], 1))
            continue
        autos = form_autos(g)
        seen: set[tuple[int, int]] = set()
        for pt in projective_line(level):
            if pt in seen:
                continue
            orbit = {
                _canon_p1(level, v[0] * pt[0] + v[1] * pt[1],
                          v[2] * pt[0] + v[3] * pt[1])
                for v in autos
            }
            seen |= orbit
            fa, fb, fc = _compose(g, lift_to_sl2(level, *pt))
            if fa % level or (-fb) % two_n != want:
                continue
            out.append(LatticeVector(fc, -fb, fa // level, level))
    return out


@dataclass(frozen=True)
class HeegnerPoint:
    """One weighted CM point in a twisted divisor."""

    vector: LatticeVector
    chi: int
    weight: Fraction

    @property
    def point(self) -> UpperHalfPoint:
        return point_of_vector(self.vector)

    @property
    def multiplicity(self) -> Fraction:
        return self.chi * self.weight


@dataclass(frozen=True)
class TwistedDivisor:
    level: int
    delta: int
    r: int
    n: Fraction
    mu: int
    points: tuple[HeegnerPoint, ...]

    @property
    def degree(self) -> Fraction:
        return sum((p.multiplicity for p in self.points), Fraction(0))

    def support(self) -> list[complex]:
        return [p.point.as_complex for p in self.points]

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "delta": self.delta,
            "r": self.r,
            "n": [self.n.numerator, self.n.denominator],
            "mu": self.mu,
            "points": [
                {
                    "a": p.vector.a,
                    "b": p.vector.b,
                    "c": p.vector.c,
                    "disc": p.vector.disc,
                    "chi": p.chi,
                    "weight": [p.weight.numerator, p.weight.denominator],
                    "x": p.point.x,
                    "y": p.point.y,
                }
                for p in self.points
            ],
            "degree": [self.degree.numerator, self.degree.denominator],
        }


def validate_twist(level: int, delta: int, r: int) -> None:
    if delta <= 0 or not is_fundamental_discriminant(delta):
        raise ValueError(
            f"twist needs a positive fundamental discriminant, got {delta}"
        )
    if (r * r - delta) % (4 * level) != 0:
        raise ValueError(
            f"congruence failure: r^2 = {r * r} is not {delta} modulo {4 * level}"
        )


def twisted_divisor(
    level: int,
    delta: int,
    r: int,
    n,
    mu: int,
) -> TwistedDivisor:
    """The weighted CM divisor of index n in coset mu, twisted by delta."""
    validate_twist(level, delta, r)
    n = Fraction(n)
    if n <= 0:
        raise ValueError("divisor index must be positive")
    _stratum_integral(level, n, mu)
    mu = mu % (2 * level)
    disc = -4 * level * delta * n
    assert disc.denominator == 1
    disc = int(disc)
    two_n = 2 * level
    points = []
    for coset in ((r * mu) % two_n, (-r * mu) % two_n):
        for w in heegner_vectors(level, disc, coset):
            chi = genus_character(w, delta)
            if chi == 0:
                continue
            weight = Fraction(2, stabilizer_order(w))
            points.append(HeegnerPoint(w, chi, weight))
    return TwistedDivisor(level, delta, r, n, mu, tuple(points))


def untwisted_degree(level: int, n, mu: int) -> Fraction:
    """Degree of the untwisted divisor; the twist one case of the above."""
    return twisted_divisor(level, 1, 1, n, mu).degree


def eisenstein_coeff(level: int, n, mu: int) -> Fraction:
    """Coefficient of the weight 3/2 Eisenstein series whose positive part
    counts untwisted divisor degrees; phi(N)/2 times the degree, with the
    constant term pinned by the level one Hurwitz value H(0) = -1/12."""
    n = Fraction(n)
    mu = mu % (2 * level)
    if n < 0:
        return Fraction(0)
    if n == 0:
        return Fraction(-euler_phi(level), 12) if mu == 0 else Fraction(0)
    _stratum_integral(level, n, mu)
    return Fraction(euler_phi(level), 2) * untwisted_degree(level, n, mu)
