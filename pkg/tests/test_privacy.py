import numpy as np
import pytest
from scipy import stats

from privsketch import privacy, seeds


class TestLaplaceSampler:
    def test_zero_scale_is_exactly_zero(self):
        rng = seeds.derive_rng(0, 0)
        assert privacy.laplace(0.0, rng) == 0.0
        np.testing.assert_array_equal(privacy.laplace(0.0, rng, size=1000), np.zeros(1000))

    def test_negative_scale_rejected(self):
        with pytest.raises(ValueError):
            privacy.laplace(-1.0, seeds.derive_rng(0, 0))

    def test_moments(self):
        lam = 2.0
        x = privacy.laplace(lam, seeds.derive_rng(42, 99), size=1_000_000)
        assert abs(x.mean()) <= 0.01 * lam * np.sqrt(2)
        assert x.var() == pytest.approx(2 * lam * lam, rel=0.02)

    def test_median_of_absolute_value(self):
        lam = 2.0
        x = privacy.laplace(lam, seeds.derive_rng(42, 99), size=1_000_000)
        assert np.median(np.abs(x)) == pytest.approx(lam * np.log(2), abs=0.01)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 10.0])
    def test_kolmogorov_smirnov(self, lam):
        x = privacy.laplace(lam, seeds.derive_rng(7, 1), size=100_000)

        def cdf(v):
            v = np.asarray(v)
            return np.where(v < 0, 0.5 * np.exp(v / lam), 1 - 0.5 * np.exp(-v / lam))

        assert stats.kstest(x, cdf).pvalue > 0.001


class TestLaplacianMechanism:
    def test_zero_sensitivity_is_identity(self):
        v = np.array([1.0, -2.0, 3.0])
        out = privacy.laplacian_mechanism(v, 0.0, 1.0, seeds.derive_rng(0, 0))
        np.testing.assert_array_equal(out, v)

    def test_bad_epsilon(self):
        with pytest.raises(ValueError):
            privacy.laplacian_mechanism([1.0], 1.0, 0.0, seeds.derive_rng(0, 0))

    def test_monte_carlo_variance(self):
        # d=3, sensitivity 1, epsilon 0.5 => per-coordinate variance 8
        rng = seeds.derive_rng(11, 0)
        out = np.stack(
            [privacy.laplacian_mechanism(np.zeros(3), 1.0, 0.5, rng) for _ in range(100_000)]
        )
        np.testing.assert_allclose(out.var(axis=0), 8.0, rtol=0.05)

    def test_neighboring_histogram_ratio(self):
        # empirical privacy check: outputs on neighbors 0 and 1 at eps=1 keep
        # every bin's probability ratio within e^1, up to 3-sigma counting error
        eps, n = 1.0, 1_000_000
        a = 0.0 + privacy.laplace(1.0 / eps, seeds.derive_rng(21, 1), size=n)
        b = 1.0 + privacy.laplace(1.0 / eps, seeds.derive_rng(21, 2), size=n)
        edges = np.arange(-4.0, 5.0 + 0.5, 0.5)
        ca, _ = np.histogram(a, bins=edges)
        cb, _ = np.histogram(b, bins=edges)
        for i in range(len(edges) - 1):
            if ca[i] < 100 or cb[i] < 100:
                continue
            p, q = ca[i] / n, cb[i] / n
            sigma = np.sqrt((1 - p) / (n * p) + (1 - q) / (n * q))
            bound = np.exp(eps) * (1 + 3 * sigma)
            assert p / q <= bound
            assert q / p <= bound


class TestExponentialMechanism:
    def test_equal_utilities_are_symmetric(self):
        rng = seeds.derive_rng(5, 0)
        draws = [
            privacy.exponential_mechanism(["a", "b"], [1.0, 1.0], [1.0, 1.0], 1.0, rng)
            for _ in range(100_000)
        ]
        assert draws.count("a") / 100_000 == pytest.approx(0.5, abs=0.01)

    def test_zero_epsilon_is_uniform(self):
        probs = privacy.exponential_weights([0.0, 5.0, 100.0], [1.0, 1.0, 1.0], 0.0)
        np.testing.assert_allclose(probs, 1 / 3)

    def test_two_candidate_closed_form(self):
        rng = seeds.derive_rng(6, 0)
        draws = [
            privacy.exponential_mechanism([0, 1], [0.0, 2.0], [1.0, 1.0], 2.0, rng)
            for _ in range(100_000)
        ]
        expected = 1 / (1 + np.exp(-2))  # 0.8808
        assert draws.count(0) / 100_000 == pytest.approx(expected, abs=0.005)

    def test_five_candidate_chi_squared(self):
        utils = np.array([0.0, 0.5, 1.0, 2.0, 4.0])
        sens = np.array([1.0, 0.5, 1.0, 2.0, 1.0])
        probs = privacy.exponential_weights(utils, sens, 1.5)
        rng = seeds.derive_rng(8, 0)
        idx = rng.choice(5, p=probs, size=100_000)
        observed = np.bincount(idx, minlength=5)
        assert stats.chisquare(observed, probs * 100_000).pvalue > 0.001

    def test_common_scaling_leaves_weights_unchanged(self):
        utils = np.array([0.3, 1.7, 2.2, 9.0])
        sens = np.array([1.0, 0.5, 2.0, 0.25])
        base = privacy.exponential_weights(utils, sens, 1.0)
        # power-of-two scaling is exact in floating point
        np.testing.assert_array_equal(
            privacy.exponential_weights(4.0 * utils, 4.0 * sens, 1.0), base
        )
        np.testing.assert_allclose(
            privacy.exponential_weights(3.0 * utils, 3.0 * sens, 1.0), base, rtol=1e-12
        )

    def test_callable_arguments(self):
        rng = seeds.derive_rng(9, 0)
        chosen = privacy.exponential_mechanism(
            [1, 2, 3], lambda c: float(c), lambda c: 1.0, 1e6, rng
        )
        assert chosen == 1  # overwhelming preference for the lowest utility

    def test_validation(self):
        rng = seeds.derive_rng(0, 0)
        with pytest.raises(ValueError):
            privacy.exponential_mechanism([], [], [], 1.0, rng)
        with pytest.raises(ValueError):
            privacy.exponential_weights([np.inf], [1.0], 1.0)
        with pytest.raises(ValueError):
            privacy.exponential_weights([1.0], [0.0], 1.0)


class TestBudget:
    def test_split_examples(self):
        es, er = privacy.budget_split(privacy.PrivacyParams(epsilon=1.0, select_fraction=0.1))
        assert (es, er) == (pytest.approx(0.1), pytest.approx(0.9))
        es, er = privacy.budget_split(privacy.PrivacyParams(epsilon=1.0, select_fraction=0.0))
        assert (es, er) == (0.0, 1.0)
        es, er = privacy.budget_split(privacy.PrivacyParams(epsilon=2.0, select_fraction=0.01))
        assert (es, er) == (pytest.approx(0.02), pytest.approx(1.98))

    def test_ledger_refuses_overspend(self):
        ledger = privacy.BudgetLedger(1.0)
        ledger.spend("select", 0.1)
        ledger.spend("release", 0.9)
        assert ledger.remaining() == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(privacy.BudgetExceededError):
            ledger.spend("extra", 0.01)

    def test_ledger_allows_exact_split(self):
        params = privacy.PrivacyParams(epsilon=0.3, select_fraction=0.1)
        es, er = privacy.budget_split(params)
        ledger = privacy.BudgetLedger(params.epsilon)
        ledger.spend("select", es)
        ledger.spend("release", er)  # floating-point sum may exceed by 1 ulp

    def test_params_validation(self):
        with pytest.raises(ValueError):
            privacy.PrivacyParams(epsilon=0.0)
        with pytest.raises(ValueError):
            privacy.PrivacyParams(epsilon=1.0, select_fraction=1.0)
        with pytest.raises(ValueError):
            privacy.PrivacyParams(epsilon=1.0, delta_conf=0.0)
        with pytest.raises(ValueError):
            privacy.PrivacyParams(epsilon=1.0, C5=0.0)
