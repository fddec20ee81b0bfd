"""Weil representation of the metaplectic group on the discriminant module.

The group ring C[Z/2N] carries the representation generated by the
diagonal action of the translation lift and a finite Fourier transform
for the inversion lift. A general metaplectic element is handled by
factoring its matrix into those generators and fixing the square root
branch afterwards: the product of generator branches equals the
principal branch up to a global sign, which is read off at one test
point and folded into the matrix. Matrices for the standard branch
then satisfy rho(g1)rho(g2) = rho(g1 g2) exactly when the branches
compose without a sign, which is the metaplectic cocycle.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import IDENTITY, Mat, mat_mul

S_MAT: Mat = (0, -1, 1, 0)


def _e(x) -> complex:
    return cmath.exp(2j * cmath.pi * x)


def sl2_word(gamma: Mat) -> list[tuple[str, int]]:
    """Factor gamma as a product of T powers and S, left to right.

    Returns ops ('T', k) and ('S', 1) whose ordered product is gamma.
    """
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise ValueError("need a determinant one integer matrix")
    word: list[tuple[str, int]] = []
    while c != 0:
        q = round(a / c)
        # T^-q then S^-1 on the left shrinks the lower left entry
        a, b = a - q * c, b - q * d
        a, b, c, d = c, d, -a, -b
        word.append(("T", q))
        word.append(("S", 1))
    # now the matrix is +-T^k
    if a == 1:
        if b:
            word.append(("T", b))
    else:
        # -T^k = S^2 T^k
        word.append(("S", 1))
        word.append(("S", 1))
        if -b:
            word.append(("T", -b))
    return word


def _word_matrix(word: list[tuple[str, int]]) -> Mat:
    out = IDENTITY
    for kind, k in word:
        out = mat_mul(out, (1, k, 0, 1) if kind == "T" else S_MAT)
    return out


def _branch_sign(word: list[tuple[str, int]], gamma: Mat) -> int:
    """Sign relating the product of generator branches to the principal one."""
    tau = complex(0.37, 1.31)
    z = tau
    val = complex(1.0)
    for kind, _k in reversed(word):
        if kind == "S":
            val *= cmath.sqrt(z)
            z = -1.0 / z
        else:
            z = z + _k
    c, d = gamma[2], gamma[3]
    ratio = val / cmath.sqrt(c * tau + d)
    if abs(ratio - 1.0) < 1e-8:
        return 1
    if abs(ratio + 1.0) < 1e-8:
        return -1
    raise RuntimeError(f"branch tracking lost, ratio {ratio}")


@dataclass(frozen=True)
class WeilRep:
    """Action of the metaplectic group attached to the level N lattice."""

    level: int

    @property
    def size(self) -> int:
        return 2 * self.level

    def q_values(self) -> np.ndarray:
        # Q(mu) mod 1 for mu = 0..2N-1
        mus = np.arange(self.size)
        return -(mus * mus) / (4.0 * self.level)

    def rho_t(self, power: int = 1) -> np.ndarray:
        return np.diag(np.exp(2j * np.pi * power * self.q_values()))

    def rho_s(self) -> np.ndarray:
        mus = np.arange(self.size)
        # -(mu, mu') = mu mu' / 2N mod 1
        phases = np.outer(mus, mus) / (2.0 * self.level)
        return _e(0.125) / np.sqrt(self.size) * np.exp(2j * np.pi * phases)

    def matrix(self, gamma: Mat) -> np.ndarray:
        """rho of (gamma, principal square root of c tau + d)."""
        return _cached_matrix(self.level, tuple(gamma)).copy()

    def inverse_matrix(self, gamma: Mat) -> np.ndarray:
        # unitary, so the inverse is the conjugate transpose
        return self.matrix(gamma).conj().T


@lru_cache(maxsize=4096)
def _cached_matrix(level: int, gamma: Mat) -> np.ndarray:
    rep = WeilRep(level)
    word = sl2_word(gamma)
    if _word_matrix(word) != gamma:
        raise RuntimeError(f"factorization failed for {gamma}")
    out = np.eye(rep.size, dtype=complex)
    rho_s = rep.rho_s()
    for kind, k in word:
        out = out @ (rep.rho_t(k) if kind == "T" else rho_s)
    out *= _branch_sign(word, gamma)
    out.setflags(write=False)
    return out
