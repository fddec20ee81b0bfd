import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlift.genus import genus_character, genus_character_array
from twistlift.lattice import IDENTITY, LatticeVector, apply_gamma, mat_mul
from twistlift.ntheory import divisors, kronecker


def test_frozen_values_level_one():
    # the two genera of discriminant -20 under the twist by 5
    assert genus_character(LatticeVector(1, 0, 5, 1), 5) == 1
    assert genus_character(LatticeVector(5, 0, 1, 1), 5) == 1
    assert genus_character(LatticeVector(2, 2, 3, 1), 5) == -1
    assert genus_character(LatticeVector(3, 2, 2, 1), 5) == -1
    # discriminant not divisible by the twist
    assert genus_character(LatticeVector(1, 1, 5, 1), 5) == 0
    # imprimitive against the twist
    assert genus_character(LatticeVector(5, 10, 30, 1), 5) == 0


def test_frozen_values_level_six():
    # disc -12 at level 6: quotient -1 is not a square mod 24
    w = LatticeVector(1, 6, 2, 6)
    assert w.disc == -12
    assert genus_character(w, 12) == 0
    # disc +12: quotient 1 is a square, value through [1, 6, 6]
    w2 = LatticeVector(1, 6, 1, 6)
    assert w2.disc == 12
    assert genus_character(w2, 12) == 1


def test_trivial_twist_is_one():
    for triple in ((1, 0, 1), (0, 0, 0), (3, -2, 5), (-1, 7, 0)):
        for n in (1, 2, 6):
            assert genus_character(LatticeVector(*triple, n), 1) == 1


def test_invalid_twists_raise():
    w = LatticeVector(1, 0, 1, 1)
    with pytest.raises(ValueError):
        genus_character(w, -3)
    with pytest.raises(ValueError):
        genus_character(w, 9)
    with pytest.raises(ValueError):
        genus_character(w, 0)
    # 5 is not a square mod 8, so the character is undefined at level 2
    with pytest.raises(ValueError, match="square"):
        genus_character(LatticeVector(1, 0, 1, 2), 5)


# twists must be squares modulo 4N for the character to make sense
PAIRS = [
    (n, d)
    for n in (1, 2, 3, 6)
    for d in (5, 8, 12, 13, 21, 73)
    if any((r * r - d) % (4 * n) == 0 for r in range(2 * n))
]


@st.composite
def vector_and_twist(draw):
    n, delta = draw(st.sampled_from(PAIRS))
    a = draw(st.integers(-15, 15))
    b = draw(st.integers(-30, 30))
    c = draw(st.integers(-15, 15))
    return LatticeVector(a, b, c, n), delta


@given(vector_and_twist())
def test_even_under_negation(wd):
    w, delta = wd
    assert genus_character(w, delta) == genus_character(-w, delta)


@given(st.data())
@settings(max_examples=150)
def test_gamma0_invariance(data):
    w, delta = data.draw(vector_and_twist())
    gamma = IDENTITY
    for _ in range(data.draw(st.integers(1, 4))):
        gamma = mat_mul(gamma, (1, data.draw(st.integers(-3, 3)), 0, 1))
        gamma = mat_mul(gamma, (1, 0, w.level * data.draw(st.integers(-2, 2)), 1))
    assert genus_character(apply_gamma(gamma, w), delta) == genus_character(w, delta)


@given(st.data())
def test_periodic_modulo_scaled_lattice(data):
    w, delta = data.draw(vector_and_twist())
    da = data.draw(st.integers(-2, 2))
    db = data.draw(st.integers(-2, 2))
    dc = data.draw(st.integers(-2, 2))
    shifted = LatticeVector(
        w.a + delta * da,
        w.b + delta * 2 * w.level * db,
        w.c + delta * dc,
        w.level,
    )
    assert genus_character(shifted, delta) == genus_character(w, delta)


@given(st.data())
@settings(max_examples=60)
def test_witness_independence(data):
    # every represented value prime to the twist gives the same symbol
    w, delta = data.draw(vector_and_twist())
    val = genus_character(w, delta)
    if val == 0:
        return
    seen = set()
    for n1 in divisors(w.level):
        n2 = w.level // n1
        fa, fb, fc = n1 * w.a, w.b, n2 * w.c
        for x in range(delta):
            for y in range(delta):
                rep = (fa * x * x + fb * x * y + fc * y * y) % delta
                if math.gcd(rep, delta) == 1:
                    seen.add(kronecker(delta, rep))
    assert seen == {val}


def test_array_agrees_with_scalar():
    rng = np.random.default_rng(7)
    for level, delta in ((1, 5), (6, 73), (6, 12), (2, 8)):
        a = rng.integers(-20, 20, size=300)
        b = rng.integers(-40, 40, size=300)
        c = rng.integers(-20, 20, size=300)
        got = genus_character_array(a, b, c, level, delta)
        for i in range(300):
            w = LatticeVector(int(a[i]), int(b[i]), int(c[i]), level)
            assert got[i] == genus_character(w, delta), (level, delta, i)
    # shape preserved
    out = genus_character_array(a.reshape(30, 10), b.reshape(30, 10), c.reshape(30, 10), 6, 73)
    assert out.shape == (30, 10)
    assert genus_character_array(a, b, c, 6, 1).min() == 1
