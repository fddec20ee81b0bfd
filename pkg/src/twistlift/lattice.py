"""Trace zero integer matrices as a quadratic space attached to X_0(N).

A vector is an integer triple (a, b, c) standing for the matrix

    [ b/2N   -a/N ]
    [  c    -b/2N ]

whose quadratic form Q = N det has signature (1, 2). Vectors of
positive norm single out CM points on the upper half plane, and
Gamma_0(N) acts by conjugation. Equivalence testing runs entirely in
integer arithmetic by reducing the positive definite binary form
attached to each vector and comparing automorphism orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Mat = tuple[int, int, int, int]

IDENTITY: Mat = (1, 0, 0, 1)


def mat_mul(x: Mat, y: Mat) -> Mat:
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def mat_inv(x: Mat) -> Mat:
    p, q, r, s = x
    if p * s - q * r != 1:
        raise ValueError("only determinant one matrices are invertible here")
    return (s, -q, -r, p)


def moebius_act(gamma: Mat, z: complex) -> complex:
    p, q, r, s = gamma
    return (p * z + q) / (r * z + s)


@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("point must lie in the upper half plane")

    @property
    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class Coset:
    """Element of the discriminant group Z/2N of the lattice."""

    level: int
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "mu", self.mu % (2 * self.level))

    @property
    def q_mod1(self) -> Fraction:
        return Fraction(-self.mu**2, 4 * self.level) % 1

    def pairing_mod1(self, other: "Coset") -> Fraction:
        if other.level != self.level:
            raise ValueError("cosets of different levels")
        return Fraction(-self.mu * other.mu, 2 * self.level) % 1


@dataclass(frozen=True)
class LatticeVector:
    a: int
    b: int
    c: int
    level: int

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-self.a, -self.b, -self.c, self.level)

    @property
    def coset(self) -> int:
        return self.b % (2 * self.level)

    @property
    def disc(self) -> int:
        """Discriminant of the associated integral form [a, b, Nc]."""
        return self.b * self.b - 4 * self.level * self.a * self.c

    def q_value(self) -> Fraction:
        return Fraction(-self.disc, 4 * self.level)

    def form(self) -> tuple[int, int, int]:
        """Binary form [Nc, -b, a] whose root is the point of the vector."""
        return (self.level * self.c, -self.b, self.a)

    def int_matrix(self) -> Mat:
        """The matrix of the vector scaled by 2N, an integer matrix."""
        return (self.b, -2 * self.a, 2 * self.level * self.c, -self.b)


def quadratic_form(w: LatticeVector) -> Fraction:
    return Fraction(4 * w.level * w.a * w.c - w.b * w.b, 4 * w.level)


def bilinear_form(w1: LatticeVector, w2: LatticeVector) -> Fraction:
    if w1.level != w2.level:
        raise ValueError("vectors of different levels")
    return Fraction(
        2 * w1.level * (w1.a * w2.c + w2.a * w1.c) - w1.b * w2.b, 2 * w1.level
    )


def vector_of_point(z: complex, level: int) -> tuple[float, float, float]:
    """Real vector of norm one whose point is z; components (a, b, c)."""
    x, y = z.real, z.imag
    if not y > 0:
        raise ValueError("point must lie in the upper half plane")
    t = -1.0 / (math.sqrt(level) * y)
    return (level * (x * x + y * y) * t, 2 * level * x * t, t)


def pairing_with_point(w: LatticeVector, z: complex) -> float:
    """Bilinear pairing of w against the norm one vector of the point z.

    Equals -2 sqrt(Q(w)) exactly at the CM point of w; the square
    minus 4 Q(w) is nonnegative everywhere by Cauchy-Schwarz.
    """
    x, y = z.real, z.imag
    n = w.level
    return -(w.a + n * w.c * (x * x + y * y) - w.b * x) / (math.sqrt(n) * y)


def point_of_vector(w: LatticeVector) -> UpperHalfPoint:
    """CM point of a positive norm vector; shared by w and -w."""
    if w.disc >= 0:
        raise ValueError("vector must have positive norm")
    a, b, c = (w.a, w.b, w.c) if w.c > 0 else (-w.a, -w.b, -w.c)
    denom = 2 * w.level * c
    return UpperHalfPoint(b / denom, math.sqrt(-w.disc) / denom)


def apply_gamma(gamma: Mat, w: LatticeVector) -> LatticeVector:
    """Conjugation action of gamma in Gamma_0(N) on a vector."""
    p, q, r, s = gamma
    n = w.level
    if p * s - q * r != 1 or r % n != 0:
        raise ValueError("matrix does not lie in Gamma_0(N)")
    m = w.int_matrix()
    left = mat_mul(gamma, m)
    out = mat_mul(left, (s, -q, -r, p))
    b2, ma2, mc2, _ = out
    assert ma2 % 2 == 0 and mc2 % (2 * n) == 0
    return LatticeVector(-ma2 // 2, b2, mc2 // (2 * n), n)


# ---------------------------------------------------------------------------
# exact reduction of positive definite forms with transformation tracking


def reduce_posdef_form(form: tuple[int, int, int]) -> tuple[tuple[int, int, int], Mat]:
    """Gauss reduce [A, B, C] with A > 0, returning (reduced, U), form∘U = reduced.

    Reduced means -A < B <= A <= C with B >= 0 when A == C.
    """
    a, b, c = form
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ValueError("form must be positive definite")
    u = IDENTITY
    while True:
        if c < a:
            a, b, c = c, -b, a
            u = mat_mul(u, (0, -1, 1, 0))
        elif b > a or b <= -a:
            # translate so that b lands in (-a, a]
            m = -((b + a) // (2 * a))
            if b + 2 * m * a <= -a:
                m += 1
            a, b, c = a, b + 2 * m * a, a * m * m + b * m + c
            u = mat_mul(u, (1, m, 0, 1))
        else:
            break
    if a == c and b < 0:
        a, b, c = c, -b, a
        u = mat_mul(u, (0, -1, 1, 0))
    return (a, b, c), u


def form_autos(reduced: tuple[int, int, int]) -> list[Mat]:
    """Proper automorphisms of a reduced positive form, modulo sign."""
    a, b, c = reduced
    out = [IDENTITY]
    if a == c and b == 0:
        out.append((0, -1, 1, 0))
    if a == b == c:
        out.append((0, -1, 1, 1))
        out.append((-1, -1, 1, 0))
    return out


def gamma0_equivalent(w1: LatticeVector, w2: LatticeVector):
    """A matrix in Gamma_0(N) conjugating w1 to w2, or None.

    Both vectors must have positive norm. The search reduces the
    attached definite forms exactly and sweeps the finite automorphism
    ambiguity, so the answer is a certificate, never a float guess.
    """
    if w1.level != w2.level:
        raise ValueError("vectors of different levels")
    n = w1.level
    if w1.disc >= 0 or w2.disc >= 0:
        raise ValueError("equivalence test needs positive norm vectors")
    if w1.disc != w2.disc or (w1.b - w2.b) % (2 * n) != 0:
        return None
    if (w1.c > 0) != (w2.c > 0):
        return None
    if w1.c < 0:
        w1, w2 = -w1, -w2
    g1, g2 = w1.form(), w2.form()
    red1, u1 = reduce_posdef_form(g1)
    red2, u2 = reduce_posdef_form(g2)
    if red1 != red2:
        return None
    u1_inv = mat_inv(u1)
    m1, m2 = w1.int_matrix(), w2.int_matrix()
    for v in form_autos(red1):
        gamma = mat_mul(mat_mul(u2, v), u1_inv)
        if gamma[2] % n != 0:
            continue
        check = mat_mul(mat_mul(gamma, m1), mat_inv(gamma))
        if check == m2:
            return gamma
        # sign ambiguity of the automorphism: -gamma acts identically
    return None


def stabilizer_order(w: LatticeVector) -> int:
    """Order of the stabilizer of w in Gamma_0(N), always counting -I."""
    if w.disc >= 0:
        raise ValueError("stabilizer defined here for positive norm vectors")
    ww = w if w.c > 0 else -w
    red, u = reduce_posdef_form(ww.form())
    u_inv = mat_inv(u)
    m = ww.int_matrix()
    count = 0
    for v in form_autos(red):
        gamma = mat_mul(mat_mul(u, v), u_inv)
        if gamma[2] % w.level != 0:
            continue
        if mat_mul(mat_mul(gamma, m), mat_inv(gamma)) == m:
            count += 1
    return 2 * count


def reduce_to_fundamental_domain(z: complex) -> tuple[complex, Mat]:
    """Move z into the standard SL_2(Z) fundamental domain; returns (z', U) with U z = z'."""
    u = IDENTITY
    for _ in range(400):
        m = -round(z.real)
        if m:
            z = z + m
            u = mat_mul((1, m, 0, 1), u)
        if abs(z) * abs(z) < 1.0 - 1e-14:
            z = -1.0 / z
            u = mat_mul((0, -1, 1, 0), u)
        else:
            break
    return z, u
