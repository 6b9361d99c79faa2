"""Generalization-bound calculators and the Monte Carlo check."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmbench.bounds import (
    BoundResult,
    HypothesisClassSpec,
    compression_generalization_bound,
    compression_view_codelength,
    hidden_worm_bound,
    max_class_log_size,
    model_complexity_ceiling,
    required_samples,
    rule_class_log_size,
    simulate_hidden_worm,
)


class TestClassSpec:
    def test_of_size(self):
        spec = HypothesisClassSpec.of_size(1000)
        assert spec.ln_size == pytest.approx(math.log(1000))
        assert spec.exact_size == 1000

    def test_inconsistent_rejected(self):
        with pytest.raises(ValueError):
            HypothesisClassSpec(1.0, 1000)


class TestCalculators:
    def test_required_samples_formula(self):
        spec = HypothesisClassSpec.of_size(1000)
        got = required_samples(0.01, 0.05, spec)
        assert got.value == math.ceil((math.log(1000) - math.log(0.05)) / 0.01)
        assert got.unit == "samples"

    def test_required_samples_round_trips_max_class(self):
        # the two formulas are inverses up to the ceiling
        spec = HypothesisClassSpec(40.0)
        n = int(required_samples(0.02, 0.01, spec).value)
        assert max_class_log_size(n, 0.02, 0.01).value >= 40.0

    def test_rule_class_formula(self):
        assert rule_class_log_size(200, 1000, 4).value == pytest.approx(
            4 * (math.log(200) + math.log(1000)))
        assert rule_class_log_size(10, 1000, 4).value == pytest.approx(
            4 * (math.log(10) + math.log(1000)))

    def test_hidden_worm_closed_form(self):
        spec = HypothesisClassSpec.of_size(1000)
        got = hidden_worm_bound(spec, 0.1, 100)
        assert got.value == pytest.approx(1000 * 0.9**100)

    def test_hidden_worm_clamps_at_one(self):
        assert hidden_worm_bound(HypothesisClassSpec.of_size(10**6), 0.01, 1).value == 1.0

    @given(st.integers(1, 10**6), st.floats(0.01, 0.5),
           st.integers(0, 2000))
    @settings(max_examples=100)
    def test_hidden_worm_monotone_in_n(self, size, eps, n):
        spec = HypothesisClassSpec.of_size(size)
        b1 = hidden_worm_bound(spec, eps, n).value
        b2 = hidden_worm_bound(spec, eps, n + 10).value
        assert b2 <= b1 + 1e-12

    def test_compression_view(self):
        spec = HypothesisClassSpec.of_size(1024)
        assert compression_view_codelength(True, spec, 10**6).value == pytest.approx(11.0)
        assert compression_view_codelength(False, spec, 10**6).value == pytest.approx(1 + 10**6)

    def test_compression_bound_formula(self):
        got = compression_generalization_bound(0.5, 1000, 0.05)
        assert got.value == pytest.approx(2 * (0.5 * math.log(2) - math.log(0.05) / 1000))

    def test_complexity_ceiling(self):
        assert model_complexity_ceiling(500).value == 500

    def test_epsilon_delta_validation(self):
        with pytest.raises(ValueError):
            required_samples(0.0, 0.05, HypothesisClassSpec.of_size(2))
        with pytest.raises(ValueError):
            max_class_log_size(10, 0.1, 1.5)


class TestSimulation:
    def test_matches_analytic_bound(self):
        analytic = hidden_worm_bound(HypothesisClassSpec.of_size(1000), 0.1, 100).value
        freq = simulate_hidden_worm(1000, 0.1, 100, 10000, seed=1)
        assert freq <= analytic + 0.005

    def test_union_bound_slack_visible(self):
        # with a tiny class the union bound is nearly tight
        analytic = hidden_worm_bound(HypothesisClassSpec.of_size(1), 0.05, 50).value
        freq = simulate_hidden_worm(1, 0.05, 50, 20000, seed=2)
        assert freq == pytest.approx(analytic, abs=0.01)

    def test_deterministic(self):
        a = simulate_hidden_worm(100, 0.1, 50, 1000, seed=7)
        b = simulate_hidden_worm(100, 0.1, 50, 1000, seed=7)
        assert a == b

    def test_resource_guard(self):
        with pytest.raises(ValueError):
            simulate_hidden_worm(10**6, 0.1, 10**4, 10**4, seed=0)
