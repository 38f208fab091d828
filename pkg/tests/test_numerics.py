import pytest
from hypothesis import given, strategies as st

from thabound.numerics import (
    BOUNDARY_GUARD,
    binary_entropy,
    db_from_linear,
    linear_from_db,
    probability,
)


class TestBinaryEntropy:
    def test_endpoints_exact(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0

    def test_maximum_is_one_bit(self):
        assert binary_entropy(0.5) == pytest.approx(1.0, rel=1e-15)

    def test_frozen_values(self):
        # independently computed at 40-digit precision
        assert binary_entropy(0.11) == pytest.approx(0.499915958165, rel=1e-11)
        assert binary_entropy(0.01) == pytest.approx(0.0807931358959, rel=1e-11)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_symmetric(self, p):
        assert binary_entropy(p) == pytest.approx(binary_entropy(1.0 - p),
                                                  abs=1e-12)

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_bounded(self, p):
        assert 0.0 <= binary_entropy(p) <= 1.0 + 1e-15

    def test_monotone_on_lower_half(self):
        grid = [i / 200 for i in range(101)]
        values = [binary_entropy(p) for p in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_tiny_negative_clamps(self):
        assert binary_entropy(-1e-13) == 0.0

    def test_far_out_of_range_raises(self):
        with pytest.raises(ValueError):
            binary_entropy(-0.1)
        with pytest.raises(ValueError):
            binary_entropy(1.1)


class TestProbabilityClamp:
    def test_passthrough(self):
        assert probability(0.3) == 0.3

    def test_clamps_within_guard(self):
        assert probability(-BOUNDARY_GUARD / 2) == 0.0
        assert probability(1.0 + BOUNDARY_GUARD / 2) == 1.0

    def test_rejects_beyond_guard(self):
        with pytest.raises(ValueError):
            probability(-1e-9)
        with pytest.raises(ValueError):
            probability(1.0 + 1e-9)


class TestDecibels:
    def test_frozen_half(self):
        assert db_from_linear(0.5) == pytest.approx(-3.01029995664, rel=1e-11)

    def test_unity_is_zero(self):
        assert db_from_linear(1.0) == 0.0
        assert linear_from_db(0.0) == 1.0

    def test_known_decades(self):
        assert db_from_linear(10.0) == pytest.approx(10.0, rel=1e-15)
        assert linear_from_db(-30.0) == pytest.approx(1e-3, rel=1e-12)

    @given(st.floats(min_value=1e-30, max_value=1e6))
    def test_round_trip(self, x):
        assert linear_from_db(db_from_linear(x)) == pytest.approx(x, rel=1e-12)

    def test_nonpositive_raises(self):
        with pytest.raises(ValueError):
            db_from_linear(0.0)
        with pytest.raises(ValueError):
            db_from_linear(-1.0)

    def test_additive_in_linear_products(self):
        assert db_from_linear(0.25 * 0.5) == pytest.approx(
            db_from_linear(0.25) + db_from_linear(0.5), abs=1e-12)
