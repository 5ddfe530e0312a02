import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from topodd.phase import Phase
from topodd.pulses import DEFAULT_DURATION, DEFAULT_RABI, RectPulse, rect_propagator
from topodd.sequences import (
    BEYOND_RESOLUTION,
    PhaseList,
    area_error_propagator,
    check_commuting_neighbors,
    check_conditions,
    check_palindrome_pi_shift,
    check_pi_pairing,
    check_sum_condition,
    detuning_order,
    get_sequence,
    reference_phases,
    tn_phases,
    verify_identity_all_orders,
)
from topodd.su2 import compose_all, rephasing_error_up_to_sign

F = Fraction


def fracs(*values):
    return [Phase(F(v)) for v in values]


def test_tn_examples():
    assert list(tn_phases(2)) == fracs(0, 1)
    assert list(tn_phases(6)) == fracs(0, "1/3", 0, 1, "4/3", 1)
    assert list(tn_phases(12)) == fracs(0, "2/3", 1, 1, "2/3", 0, 1, "5/3", 0, 0, "5/3", 1)
    assert tn_phases(6).name == "T6"


@pytest.mark.parametrize("bad", [0, -2, 3, 5, 2.0])
def test_tn_rejects_bad_n(bad):
    with pytest.raises(ValueError):
        tn_phases(bad)


def test_reference_examples():
    assert list(reference_phases("CPMG", 4)) == fracs(0, 0, 0, 0)
    assert list(reference_phases("XY4", 4)) == fracs(0, "1/2", 0, "1/2")
    assert list(reference_phases("xy8", 8)) == fracs(0, "1/2", 0, "1/2", "1/2", 0, "1/2", 0)
    assert len(reference_phases("kdd", 20)) == 20
    assert len(reference_phases("xy4", 12)) == 12


@pytest.mark.parametrize("family,n", [("xy4", 6), ("xy8", 4), ("kdd", 10), ("ur", 3), ("ur", 2), ("foo", 4), ("cpmg", 0)])
def test_reference_rejects(family, n):
    with pytest.raises(ValueError):
        reference_phases(family, n)


def test_ur_generating_formula():
    # UR4 and UR6 from the generating formula with the usual free-phase choice
    assert list(reference_phases("ur", 4)) == fracs(0, 1, 1, 0)
    assert list(reference_phases("ur", 6)) == fracs(0, "2/3", 0, 0, "2/3", 0)
    assert list(reference_phases("ur", 8)) == fracs(0, 1, "1/2", "1/2", 1, 0, "3/2", "3/2")


def test_sum_condition_examples():
    ok, residual = check_sum_condition(tn_phases(6))
    assert ok and residual == 0
    # brute force over the complex exponentials, independent of the pairing shortcut
    brute = abs(sum(cmath.exp(1j * p.radians) for p in tn_phases(6)))
    assert brute < 1e-15
    ok, residual = check_sum_condition(fracs(0, 0))
    assert not ok and residual == pytest.approx(2)
    # cancellation without a pi pairing: cube roots of unity
    ok, residual = check_sum_condition(fracs(0, "2/3", "4/3"))
    assert ok and residual < 1e-15


def test_pi_pairing():
    assert check_pi_pairing(fracs(0, 1))
    assert not check_pi_pairing(fracs(0, 0, 1))
    assert check_pi_pairing(fracs("1/2", "1/3", "4/3", "3/2"))
    assert not check_pi_pairing(fracs(0, 0, 1, "1/2"))


def test_palindrome_pi_shift():
    assert check_palindrome_pi_shift(fracs(0, "1/2", "1/2", 0, 1, "3/2", "3/2", 1))
    assert check_palindrome_pi_shift(tn_phases(14))
    assert not check_palindrome_pi_shift(fracs(0, "1/2", 1, "3/2"))
    assert not check_palindrome_pi_shift(fracs(0, 1, 0))


def test_commuting_neighbors():
    assert check_commuting_neighbors(tn_phases(2))
    assert check_commuting_neighbors(tn_phases(4))
    assert not check_commuting_neighbors(tn_phases(6))


@pytest.mark.parametrize("n", range(2, 66, 2))
def test_tn_structure_and_sum(n):
    p = tn_phases(n)
    assert check_palindrome_pi_shift(p)
    assert check_pi_pairing(p)
    assert check_sum_condition(p)[0]


def test_conditions_report_t6():
    r = check_conditions(tn_phases(6))
    assert r.pi_pairing and r.palindrome_pi_shift and r.sum_condition
    assert not r.commuting_neighbors
    r2 = check_conditions(tn_phases(2))
    assert all([r2.pi_pairing, r2.palindrome_pi_shift, r2.sum_condition, r2.commuting_neighbors])


def test_verify_identity_examples():
    ok, err = verify_identity_all_orders(tn_phases(2))
    assert ok and err < 1e-14
    ok, err = verify_identity_all_orders(tn_phases(24))
    assert ok and err < 1e-10
    ok, err = verify_identity_all_orders(reference_phases("cpmg", 4))
    assert not ok and err > 1


def test_cpmg4_at_half_is_minus_identity():
    # four rotations of 1.5 pi add up to 6 pi, i.e. -I: no error at this one point
    u = area_error_propagator(reference_phases("cpmg", 4), 0.5)
    assert rephasing_error_up_to_sign(u) < 1e-15
    u = area_error_propagator(reference_phases("cpmg", 2), 0.5)
    assert rephasing_error_up_to_sign(u) > 0.5


@st.composite
def palindromic_pi_shift_lists(draw):
    half = draw(st.lists(st.fractions(0, 2, max_denominator=24), min_size=1, max_size=8))
    first = half + half[::-1][draw(st.integers(0, 1)):]
    return [Phase(f) for f in first] + [Phase(f + 1) for f in first]


@settings(max_examples=60, deadline=None)
@given(palindromic_pi_shift_lists())
def test_structure_implies_identity(phases):
    assert check_palindrome_pi_shift(phases)
    ok, err = verify_identity_all_orders(phases, samples=51)
    assert ok, err


def _order_oracle(phases, deltas=(0.02, 0.04)):
    """Power-law exponent of the propagator's departure from its resonant value,
    from double-precision closed-form propagators."""

    def departure(d):
        u = compose_all(
            rect_propagator(RectPulse(DEFAULT_RABI, DEFAULT_DURATION, d * DEFAULT_RABI, phi)) for phi in phases
        )
        u0 = compose_all(rect_propagator(RectPulse(DEFAULT_RABI, DEFAULT_DURATION, 0.0, phi)) for phi in phases)
        return abs(u.a - u0.a) + abs(u.b - u0.b)

    lo, hi = deltas
    return math.log(departure(hi) / departure(lo)) / math.log(hi / lo)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_detuning_order_matches_power_law_oracle(n):
    p = tn_phases(n)
    k = detuning_order(p)
    assert abs(_order_oracle(p) - k) < 0.2


def test_detuning_order_examples():
    k2 = detuning_order(tn_phases(2))
    k10 = detuning_order(tn_phases(10))
    assert k2 >= 1 and k10 > k2
    single = detuning_order(PhaseList("pi", (0,)))
    assert single == 1  # regression baseline
    assert abs(_order_oracle([Phase(0)]) - 1) < 0.1
    assert detuning_order(tn_phases(24)) == BEYOND_RESOLUTION


def test_detuning_order_regression():
    orders = [detuning_order(tn_phases(n)) for n in range(2, 24, 2)]
    assert orders == [1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11]


def test_detuning_order_pulse_model_units_cancel():
    pulse = RectPulse(2 * math.pi * 10e6, 50e-9)
    assert detuning_order(tn_phases(8), pulse) == detuning_order(tn_phases(8))
    with pytest.raises(ValueError):
        detuning_order(tn_phases(8), RectPulse(DEFAULT_RABI, 10e-9))


def test_get_sequence_dispatch():
    assert get_sequence("TN", 4) == tn_phases(4)
    assert get_sequence("cpmg", 3).name == "CPMG3"
