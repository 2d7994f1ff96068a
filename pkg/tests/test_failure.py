from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inquest.errors import InvalidParams
from inquest.harness import failure_bound, monte_carlo_failure


class TestClosedForm:
    def test_known_value(self):
        assert failure_bound(0.05, 40) == pytest.approx(0.8715, abs=1e-4)

    def test_edges(self):
        assert failure_bound(0.0, 100) == 0.0
        assert failure_bound(1.0, 1) == 1.0
        assert failure_bound(0.3, 0) == 0.0

    def test_single_turn_equals_epsilon(self):
        assert failure_bound(0.25, 1) == pytest.approx(0.25)

    def test_compounding(self):
        # two turns: 1 - 0.9^2
        assert failure_bound(0.1, 2) == pytest.approx(0.19)

    @given(
        epsilon=st.floats(0.0, 1.0, allow_nan=False),
        n=st.integers(0, 500),
    )
    def test_matches_direct_expansion(self, epsilon, n):
        assert failure_bound(epsilon, n) == pytest.approx(
            1.0 - math.pow(1.0 - epsilon, n)
        )

    @given(epsilon=st.floats(0.001, 0.999), n=st.integers(1, 200))
    @settings(max_examples=60)
    def test_monotone_in_n(self, epsilon, n):
        assert failure_bound(epsilon, n + 1) >= failure_bound(epsilon, n)

    def test_param_validation(self):
        with pytest.raises(InvalidParams):
            failure_bound(-0.1, 5)
        with pytest.raises(InvalidParams):
            failure_bound(1.1, 5)
        with pytest.raises(InvalidParams):
            failure_bound(0.5, -1)


class TestMonteCarlo:
    def test_deterministic_per_seed(self):
        a = monte_carlo_failure(0.05, 40, trials=5000, seed=3)
        b = monte_carlo_failure(0.05, 40, trials=5000, seed=3)
        c = monte_carlo_failure(0.05, 40, trials=5000, seed=4)
        assert a == b
        assert a != c

    def test_tracks_closed_form(self):
        estimate = monte_carlo_failure(0.05, 40, trials=20_000, seed=0)
        assert abs(estimate.estimate - failure_bound(0.05, 40)) < 0.01

    def test_half_width_formula(self):
        estimate = monte_carlo_failure(0.1, 10, trials=4000, seed=1)
        p = estimate.estimate
        assert estimate.half_width_95 == pytest.approx(
            1.96 * math.sqrt(p * (1 - p) / 4000)
        )

    def test_degenerate_epsilons(self):
        zero = monte_carlo_failure(0.0, 50, trials=1000, seed=0)
        one = monte_carlo_failure(1.0, 3, trials=1000, seed=0)
        assert zero.estimate == 0.0 and zero.half_width_95 == 0.0
        assert one.estimate == 1.0 and one.half_width_95 == 0.0

    def test_param_validation(self):
        with pytest.raises(InvalidParams):
            monte_carlo_failure(0.5, 10, trials=0)
        with pytest.raises(InvalidParams):
            monte_carlo_failure(2.0, 10, trials=10)

    def test_interval_coverage(self):
        # The 95% interval should contain the true value in at least 93%
        # of 200 repetitions (binomial slack over the nominal rate).
        true = failure_bound(0.05, 40)
        covered = 0
        for rep in range(200):
            est = monte_carlo_failure(0.05, 40, trials=2000, seed=10_000 + rep)
            if abs(est.estimate - true) <= max(est.half_width_95, 1e-12):
                covered += 1
        assert covered >= 186
