import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_unitary, unitaries
from topodd.phase import Phase
from topodd.su2 import (
    IDENTITY,
    SIGMA_Z,
    Unitary2,
    commutator_m,
    compose,
    dagger,
    exp_m,
    m_matrix,
    phase_insensitive_error,
    rephasing_error,
    rephasing_error_up_to_sign,
    resonant_pulse,
    transition_probability,
)

X = Unitary2(0, -1j)
fractions = st.fractions(min_value=-4, max_value=4, max_denominator=48)


def test_rejects_non_unitary():
    with pytest.raises(ValueError):
        Unitary2(1.0, 0.5)
    with pytest.raises(ValueError):
        Unitary2(float("nan"), 0)


def test_compose_identity():
    assert compose(IDENTITY, IDENTITY) == IDENTITY


def test_compose_matches_matrix_product(rng):
    for _ in range(50):
        u, v = random_unitary(rng), random_unitary(rng)
        np.testing.assert_allclose(compose(v, u).matrix, v.matrix @ u.matrix, atol=1e-15)


def test_compose_x_x_is_minus_identity():
    expected = X.matrix @ X.matrix  # direct 2x2 product
    np.testing.assert_allclose(expected, -np.eye(2))
    u = compose(X, X)
    assert (u.a, u.b) == (-1, 0)


def test_compose_with_inverse(rng):
    for _ in range(100):
        u = random_unitary(rng)
        for w in (compose(u, dagger(u)), compose(dagger(u), u)):
            assert abs(w.a - 1) < 1e-14 and abs(w.b) < 1e-14


def test_dagger():
    assert dagger(IDENTITY) == IDENTITY
    assert dagger(X) == Unitary2(0, 1j)


@given(unitaries())
def test_dagger_involution(u):
    assert dagger(dagger(u)) == u


def test_unitarity_preserved_over_many_pairs(rng):
    worst = 0.0
    for _ in range(10_000):
        w = compose(random_unitary(rng), random_unitary(rng))
        worst = max(worst, w.unitarity_defect())
    assert worst < 1e-12


def test_resonant_pulse_examples():
    u = resonant_pulse(math.pi, 0)
    assert abs(u.a) < 1e-16 and abs(u.b + 1j) < 1e-16
    assert resonant_pulse(0, Phase(Fraction(2, 7))) == IDENTITY
    v = resonant_pulse(math.pi, 1)
    w = dagger(resonant_pulse(math.pi, 0))
    assert abs(v.a - w.a) < 1e-15 and abs(v.b - 1j) < 1e-15 and abs(v.b - w.b) < 1e-15


@given(st.floats(-20, 20), fractions)
def test_pi_shift_inverts(area, f):
    phi = Phase(f)
    u = resonant_pulse(area, phi + 1)
    v = dagger(resonant_pulse(area, phi))
    assert abs(u.a - v.a) < 1e-14 and abs(u.b - v.b) < 1e-14


@given(st.floats(-20, 20), fractions)
def test_exponential_form(area, f):
    expected = exp_m(area / 2, Phase(f))
    np.testing.assert_allclose(resonant_pulse(area, Phase(f)).matrix, expected, atol=1e-12)


def test_exp_m_against_scipy():
    from scipy.linalg import expm

    for f in (Fraction(0), Fraction(1, 3), Fraction(7, 5)):
        m = m_matrix(Phase(f))
        np.testing.assert_allclose(exp_m(0.8, Phase(f)), expm(-0.8j * m), atol=1e-14)


@given(fractions)
def test_m_squares_to_identity(f):
    m = m_matrix(Phase(f))
    assert np.max(np.abs(m @ m - np.eye(2))) < 1e-14


def test_rephasing_error_examples():
    assert rephasing_error(IDENTITY) == 0
    assert rephasing_error(X) == 2
    minus = Unitary2(-1, 0)
    assert rephasing_error(minus) == 2
    assert rephasing_error_up_to_sign(minus) == 0
    assert phase_insensitive_error(minus) == 0


def test_transition_probability():
    assert transition_probability(IDENTITY) == 0
    assert transition_probability(resonant_pulse(math.pi, 0)) == pytest.approx(1, abs=1e-16)
    p = transition_probability(resonant_pulse(math.pi * 1.1, 0))
    assert p == pytest.approx(math.sin(0.55 * math.pi) ** 2, abs=1e-15)
    assert p == pytest.approx(0.9755, abs=5e-5)


@pytest.mark.parametrize("xi", [1e-1, 1e-2, 1e-3])
def test_single_pulse_expansion(xi):
    p = transition_probability(resonant_pulse(math.pi * (1 + xi), 0))
    assert abs(p - (1 - math.pi**2 * xi**2 / 4)) <= 3 * xi**4


def test_commutator_examples():
    assert np.max(np.abs(commutator_m(0, 1))) < 1e-15
    half = Phase(Fraction(1, 2))
    m0, m1 = m_matrix(0), m_matrix(half)
    direct = m0 @ m1 - m1 @ m0
    np.testing.assert_allclose(direct, np.diag([-2j, 2j]), atol=1e-15)
    # sin(0 - pi/2) = -1
    np.testing.assert_allclose(commutator_m(0, half), 2j * math.sin(-math.pi / 2) * SIGMA_Z, atol=1e-15)
    assert np.all(commutator_m(half, half) == 0)


def test_commutator_identity_random(rng):
    for _ in range(1000):
        f1 = Fraction(int(rng.integers(-200, 200)), int(rng.integers(1, 60)))
        f2 = Fraction(int(rng.integers(-200, 200)), int(rng.integers(1, 60)))
        p1, p2 = Phase(f1), Phase(f2)
        expected = 2j * math.sin(p1.radians - p2.radians) * SIGMA_Z
        assert np.max(np.abs(commutator_m(p1, p2) - expected)) < 1e-14


def test_with_phase_matches_resonant():
    u = resonant_pulse(1.3, 0).with_phase(Phase(Fraction(2, 3)))
    v = resonant_pulse(1.3, Phase(Fraction(2, 3)))
    assert abs(u.b - v.b) < 1e-15 and u.a == v.a


def test_from_matrix_roundtrip(rng):
    u = random_unitary(rng)
    w = Unitary2.from_matrix(u.matrix)
    assert abs(w.a - u.a) < 1e-15 and abs(w.b - u.b) < 1e-15
    assert cmath.isclose(np.linalg.det(u.matrix), 1)
