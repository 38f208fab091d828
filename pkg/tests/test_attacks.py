import math

import pytest
from hypothesis import given, strategies as st

from thabound.attacks import (
    AttackModel,
    coin_imbalance,
    effective_imbalance,
    general_tha,
    no_attack,
    passive_tha,
    phase_error_general,
    phase_error_passive,
    usd_conclusive_fraction,
    usd_tha,
)


class TestAttackModel:
    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            AttackModel("siphon", 0.1)

    def test_negative_leakage_rejected(self):
        with pytest.raises(ValueError):
            general_tha(-1e-9)

    def test_no_attack_pins_leakage_to_zero(self):
        with pytest.raises(ValueError):
            AttackModel("none", 0.1)
        assert no_attack().mu_out == 0.0

    def test_factories(self):
        assert general_tha(0.5).kind == "general"
        assert passive_tha(0.5).kind == "passive"
        assert usd_tha(0.5).kind == "usd"


class TestCoinImbalance:
    def test_zero_leakage_exactly_zero(self):
        assert coin_imbalance(0.0) == 0.0

    def test_frozen_values(self):
        # independently computed at 40-digit precision
        assert coin_imbalance(0.015) == pytest.approx(0.00749944170609, rel=1e-11)
        assert coin_imbalance(0.01) == pytest.approx(0.004999834165, rel=1e-10)

    def test_small_leakage_no_cancellation(self):
        # naive 0.5*(1 - exp(-mu)*cos(mu)) loses ~10 digits here; the
        # stable form keeps the value at mu/2 to full precision
        assert coin_imbalance(1e-6) == pytest.approx(4.9999999999983333e-7,
                                                     rel=1e-12)
        assert coin_imbalance(1e-8) == pytest.approx(5e-9, rel=1e-12)

    def test_negative_mu_rejected(self):
        with pytest.raises(ValueError):
            coin_imbalance(-0.1)

    def test_monotone_at_small_leakage(self):
        grid = [i * 0.01 for i in range(201)]
        values = [coin_imbalance(mu) for mu in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))

    @given(st.floats(min_value=0.0, max_value=50.0))
    def test_bounded(self, mu):
        assert 0.0 <= coin_imbalance(mu) <= 1.0


class TestEffectiveImbalance:
    def test_renormalizes_by_yield(self):
        assert effective_imbalance(0.01, 0.5) == pytest.approx(0.02, rel=1e-15)

    def test_vacuous_when_half_or_more(self):
        assert effective_imbalance(0.3, 0.5) is None
        assert effective_imbalance(0.25, 0.5) is None  # boundary is vacuous
        assert effective_imbalance(0.2, 0.5) == pytest.approx(0.4, rel=1e-15)

    def test_no_detections_raises(self):
        with pytest.raises(ValueError):
            effective_imbalance(0.01, 0.0)

    def test_zero_passes_through(self):
        assert effective_imbalance(0.0, 0.125) == 0.0


class TestPhaseErrorGeneral:
    def test_frozen_values(self):
        assert phase_error_general(0.0, 0.01) == pytest.approx(0.0396, rel=1e-12)
        assert phase_error_general(0.01, 0.001388) == pytest.approx(
            0.0302096308528, rel=1e-11)

    def test_zero_imbalance_returns_error_exactly(self):
        for e in (0.0, 0.01, 0.11, 0.3):
            assert phase_error_general(e, 0.0) == e

    def test_vacuous_propagates(self):
        assert phase_error_general(0.01, None) is None

    def test_clamped_at_half(self):
        assert phase_error_general(0.3, 0.4) == 0.5

    @given(st.floats(min_value=0.0, max_value=0.5),
           st.floats(min_value=0.0, max_value=0.49))
    def test_never_below_bare_error(self, e, d):
        inflated = phase_error_general(e, d)
        assert inflated is not None
        assert e - 1e-12 <= inflated <= 0.5

    def test_monotone_in_imbalance_for_small_error(self):
        e = 0.01
        grid = [i * 0.001 for i in range(200)]
        values = [phase_error_general(e, d) for d in grid]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


class TestPhaseErrorPassive:
    def test_zero_leakage_is_identity(self):
        for e in (0.0, 0.0100342975992, 0.25):
            assert phase_error_passive(e, 0.0) == e

    def test_frozen_values(self):
        assert phase_error_passive(0.0, 0.01) == pytest.approx(
            0.00990066334662, rel=1e-11)
        assert phase_error_passive(0.010029, 0.01) == pytest.approx(
            0.0197310758412, rel=1e-11)

    def test_saturates_at_half(self):
        assert phase_error_passive(0.01, 1e3) == pytest.approx(0.5, rel=1e-12)

    @given(st.floats(min_value=0.0, max_value=0.5),
           st.floats(min_value=0.0, max_value=10.0))
    def test_bounded_between_error_and_half(self, e, mu):
        out = phase_error_passive(e, mu)
        assert e - 1e-12 <= out <= 0.5 + 1e-12

    def test_closed_form(self):
        e, mu = 0.02, 0.3
        expected = 0.5 * (1.0 - (1.0 - 2.0 * e) * math.exp(-2.0 * mu))
        assert phase_error_passive(e, mu) == pytest.approx(expected, rel=1e-14)


class TestUsdConclusiveFraction:
    def test_zero_leakage_exactly_zero(self):
        assert usd_conclusive_fraction(0.0, 0.125) == 0.0

    def test_frozen_value(self):
        assert usd_conclusive_fraction(0.01, 0.1) == pytest.approx(
            0.198013266932, rel=1e-11)

    def test_vacuous_when_everything_conclusive(self):
        # raw fraction 1.729 exceeds 1: the bound says Eve could
        # unambiguously read every detected pulse
        assert usd_conclusive_fraction(1.0, 0.5) is None

    def test_no_detections_raises(self):
        with pytest.raises(ValueError):
            usd_conclusive_fraction(0.01, 0.0)

    @given(st.floats(min_value=0.0, max_value=5.0),
           st.floats(min_value=1e-6, max_value=1.0))
    def test_in_unit_interval_or_vacuous(self, mu, y):
        out = usd_conclusive_fraction(mu, y)
        assert out is None or 0.0 <= out < 1.0
