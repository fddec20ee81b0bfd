"""Elementary and analytic number theory helpers.

Everything here is level independent: multiplicative functions, the
Kronecker symbol, invariants of real quadratic fields computed from
cycles of reduced indefinite binary forms, Hurwitz class numbers,
Dirichlet L-values by Hurwitz zeta continuation, and the incomplete
Gamma type integrals used by the kernel routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import special as sc
from scipy.integrate import quad


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Fine for the sizes we meet."""
    if n <= 0:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors, sorted ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@lru_cache(maxsize=None)
def squares_mod(m: int) -> frozenset[int]:
    return frozenset(x * x % m for x in range(m))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            k = -k
    # n odd and positive from here; standard binary Jacobi loop
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    """True for 1 and for discriminants of quadratic fields."""
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        core = abs(d)
    elif d % 4 == 0 and (d // 4) % 4 in (2, 3):
        core = abs(d) // 4
    else:
        return False
    return core == 1 or all(e == 1 for e in factorize(core).values())


# ---------------------------------------------------------------------------
# real quadratic fields via cycles of reduced indefinite forms


def _reduced_forms(delta: int) -> list[tuple[int, int, int]]:
    # reduced means 0 < b < sqrt(delta) and sqrt(delta) - b < 2|a| < sqrt(delta) + b
    t = math.isqrt(delta)
    forms = []
    b = 2 - (delta % 2)
    while b * b < delta:
        for aa in range(1, (t + b) // 2 + 1):
            if (2 * aa + b) ** 2 <= delta:
                continue
            if 2 * aa - b >= 0 and (2 * aa - b) ** 2 >= delta:
                continue
            if (b * b - delta) % (4 * aa) == 0:
                c = (b * b - delta) // (4 * aa)
                forms.append((aa, b, c))
                forms.append((-aa, b, -c))
        b += 2
    return forms


def _rho_step(form: tuple[int, int, int], delta: int):
    # right neighbor: [a,b,c] -> [c, b', (b'^2-delta)/(4c)] with
    # b' = -b mod 2|c| pulled into (sqrt(delta)-2|c|, sqrt(delta))
    a, b, c = form
    t = math.isqrt(delta)
    m2 = 2 * abs(c)
    bp = t - ((t + b) % m2)
    cp = (bp * bp - delta) // (4 * c)
    m = (b + bp) // (2 * c)
    return (c, bp, cp), m


def _mat_mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


@dataclass(frozen=True)
class RealQuadraticData:
    """Invariants of the real quadratic order of fundamental discriminant delta.

    The fundamental unit is (unit_x + unit_y*sqrt(delta))/2, the smallest
    unit above 1; unit_norm is its norm. class_number is the wide count,
    narrow_class_number the count under totally positive equivalence.
    """

    delta: int
    class_number: int
    narrow_class_number: int
    unit_x: int
    unit_y: int
    unit_norm: int

    @property
    def fundamental_unit(self) -> float:
        return (self.unit_x + self.unit_y * math.sqrt(self.delta)) / 2.0

    @property
    def regulator(self) -> float:
        return math.log(self.fundamental_unit)


@lru_cache(maxsize=None)
def real_quadratic_data(delta: int) -> RealQuadraticData:
    if delta <= 1 or not is_fundamental_discriminant(delta):
        raise ValueError(f"need a fundamental discriminant > 1, got {delta}")

    forms = _reduced_forms(delta)
    todo = set(forms)
    cycles = 0
    while todo:
        start = next(iter(todo))
        cycles += 1
        g = start
        while True:
            todo.discard(g)
            g, _ = _rho_step(g, delta)
            if g == start:
                break
    h_plus = cycles

    # automorph of the principal cycle gives the smallest norm +1 unit
    t = math.isqrt(delta)
    b1 = t if (t - delta) % 2 == 0 else t - 1
    start = (1, b1, (b1 * b1 - delta) // 4)
    mat = (1, 0, 0, 1)
    g = start
    while True:
        g2, m = _rho_step(g, delta)
        mat = _mat_mul(mat, (0, -1, 1, m))
        g = g2
        if g == start:
            break
    tr = mat[0] + mat[3]
    if tr < 0:
        mat = tuple(-x for x in mat)
        tr = -tr
    u = abs(mat[2])  # lower-left entry is a*u with a = 1
    assert tr * tr - delta * u * u == 4

    # norm -1 unit exists iff the norm +1 generator is a square
    x = math.isqrt(tr - 2)
    if x > 0 and x * x == tr - 2 and u % x == 0:
        y = u // x
        if x * x - delta * y * y == -4:
            return RealQuadraticData(delta, h_plus, h_plus, x, y, -1)
    assert h_plus % 2 == 0
    return RealQuadraticData(delta, h_plus // 2, h_plus, tr, u, 1)


# ---------------------------------------------------------------------------
# Hurwitz class numbers


@lru_cache(maxsize=None)
def hurwitz_class_number(n: int) -> Fraction:
    """Weighted count of positive definite forms of discriminant -n.

    Classes containing a multiple of x^2+y^2 weigh 1/2, of x^2+xy+y^2
    weigh 1/3. Imprimitive forms are included.
    """
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return Fraction(-1, 12)
    if n % 4 in (1, 2):
        return Fraction(0)
    total = Fraction(0)
    b = n % 2
    while b * b <= n:
        rem = b * b + n  # equals 4ac
        a = max(b, 1)
        while 4 * a * a <= rem:
            if rem % (4 * a) == 0:
                c = rem // (4 * a)
                if b == 0 or a == b or a == c:
                    if a == b and a == c:
                        total += Fraction(1, 3)
                    elif b == 0 and a == c:
                        total += Fraction(1, 2)
                    else:
                        total += 1
                else:
                    total += 2  # [a, b, c] and [a, -b, c] both reduced
            a += 1
        b += 2
    return total


# ---------------------------------------------------------------------------
# zeta and Dirichlet L-functions

_BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)


def hurwitz_zeta(s: float, a: float, cutoff: int = 32) -> float:
    """Hurwitz zeta by Euler-Maclaurin; real s != 1, a > 0."""
    if s == 1:
        raise ValueError("pole at s = 1")
    total = sum((a + k) ** -s for k in range(cutoff))
    m = a + cutoff
    total += m ** (1 - s) / (s - 1) + 0.5 * m**-s
    poch = s
    power = m ** (-s - 1)
    for j, b2j in enumerate(_BERNOULLI, start=1):
        total += float(b2j) / math.factorial(2 * j) * poch * power
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        power /= m * m
    return total


def zeta(s: float) -> float:
    return hurwitz_zeta(s, 1.0)


def zeta_coprime(n: int, s: float) -> float:
    """Riemann zeta with Euler factors at primes dividing n removed."""
    out = zeta(s)
    for p in factorize(n):
        out *= 1.0 - p**-s
    return out


def completed_zeta(s: float) -> float:
    """pi^(-s/2) Gamma(s/2) zeta(s); invariant under s -> 1-s."""
    return math.pi ** (-s / 2) * math.gamma(s / 2) * zeta(s)


def dirichlet_L(delta: int, s: float) -> float:
    """L(s, chi) for the real character chi = (delta|.), delta fundamental.

    At s = 1 the value comes from the digamma expansion of the Hurwitz
    zeta poles, which cancel since chi sums to zero over a period.
    """
    if not is_fundamental_discriminant(delta):
        raise ValueError(f"{delta} is not a fundamental discriminant")
    if delta == 1:
        return zeta(s)
    q = abs(delta)
    chis = [(a, kronecker(delta, a)) for a in range(1, q) if kronecker(delta, a) != 0]
    if s == 1:
        return -sum(ch * float(sc.digamma(a / q)) for a, ch in chis) / q
    return q**-s * sum(ch * hurwitz_zeta(s, a / q) for a, ch in chis)


def completed_dirichlet_L(delta: int, s: float) -> float:
    """pi^(-s/2) Gamma(s/2) L(s, chi_delta), without the conductor power."""
    return math.pi ** (-s / 2) * math.gamma(s / 2) * dirichlet_L(delta, s)


def sigma_power(n: int, expo: float) -> float:
    """Divisor power sum over positive divisors of n."""
    return float(sum(d**expo for d in divisors(n)))


# ---------------------------------------------------------------------------
# special functions for the kernels


def beta_integral(s: float, r: float) -> float:
    """Integral of exp(-r*t) * t^(-s) for t in [1, inf)."""
    if r < 0:
        raise ValueError("need r >= 0")
    if r == 0:
        if s <= 1:
            raise ValueError("integral diverges at r = 0 unless s > 1")
        return 1.0 / (s - 1.0)
    if s == 1:
        return float(sc.exp1(r))
    if s == 1.5:
        rt = math.sqrt(r)
        return 2.0 * math.exp(-r) - 2.0 * rt * math.sqrt(math.pi) * math.erfc(rt)
    val, _ = quad(lambda t: math.exp(-r * t) * t**-s, 1.0, math.inf)
    return val


def bessel_K(nu: float, x: float) -> float:
    return float(sc.kv(nu, x))
