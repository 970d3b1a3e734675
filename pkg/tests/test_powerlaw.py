import math

import numpy as np
import pytest

from abcdgraph.errors import DomainError
from abcdgraph.powerlaw import TruncatedPowerLaw

# Direct evaluation of the closed form
# (5**-1.5 - 6**-1.5) / (5**-1.5 - 32**-1.5):
PMF_CONT_G25_LO5_HI31_AT5 = 0.255025420824961


def tail_sum(dist, k):
    """Summation oracle for the ccdf, independent of the cumulative table."""
    return math.fsum(dist.pmf(x) for x in range(k, dist.hi + 1))


class TestPmf:
    def test_continuous_closed_form_value(self):
        dist = TruncatedPowerLaw(2.5, 5, 31, "continuous")
        assert dist.pmf(5) == pytest.approx(PMF_CONT_G25_LO5_HI31_AT5, abs=1e-12)
        assert dist.pmf(5) == pytest.approx(0.25503, abs=5e-6)

    @pytest.mark.parametrize("variant", ["continuous", "discrete"])
    @pytest.mark.parametrize("exponent,lo,hi", [(2.5, 5, 31), (1.5, 50, 5623), (2.1, 1, 1000)])
    def test_normalization(self, variant, exponent, lo, hi):
        dist = TruncatedPowerLaw(exponent, lo, hi, variant)
        total = math.fsum(dist.pmf(k) for k in range(lo, hi + 1))
        assert abs(total - 1.0) <= 1e-12

    @pytest.mark.parametrize("variant", ["continuous", "discrete"])
    def test_degenerate_support(self, variant):
        dist = TruncatedPowerLaw(2.5, 7, 7, variant)
        assert dist.pmf(7) == pytest.approx(1.0, abs=1e-15)
        assert dist.mean() == pytest.approx(7.0, abs=1e-12)

    def test_domain_errors(self):
        dist = TruncatedPowerLaw(2.5, 5, 31)
        with pytest.raises(DomainError):
            dist.pmf(4)
        with pytest.raises(DomainError):
            dist.pmf(32)
        with pytest.raises(DomainError):
            TruncatedPowerLaw(1.0, 5, 31)
        with pytest.raises(DomainError):
            TruncatedPowerLaw(2.5, 10, 5)


class TestCcdf:
    @pytest.mark.parametrize("variant", ["continuous", "discrete"])
    def test_boundaries(self, variant):
        dist = TruncatedPowerLaw(2.5, 5, 31, variant)
        assert dist.ccdf(5) == pytest.approx(1.0, abs=1e-12)
        assert dist.ccdf(31) == pytest.approx(dist.pmf(31), abs=1e-12)

    def test_matches_tail_summation(self):
        dist = TruncatedPowerLaw(2.5, 5, 1000, "continuous")
        assert dist.ccdf(50) == pytest.approx(tail_sum(dist, 50), abs=1e-12)

    @pytest.mark.parametrize("variant", ["continuous", "discrete"])
    def test_consistency_random_points(self, variant):
        dist = TruncatedPowerLaw(2.2, 3, 500, variant)
        rng = np.random.default_rng(1)
        for k in rng.integers(dist.lo, dist.hi + 1, size=12):
            assert dist.ccdf(int(k)) == pytest.approx(tail_sum(dist, int(k)), abs=1e-12)

    def test_continuous_closed_form(self):
        # (K**(1-g) - (hi+1)**(1-g)) / (lo**(1-g) - (hi+1)**(1-g))
        dist = TruncatedPowerLaw(2.5, 5, 1000, "continuous")
        g = 2.5
        expected = (50 ** (1 - g) - 1001 ** (1 - g)) / (5 ** (1 - g) - 1001 ** (1 - g))
        assert dist.ccdf(50) == pytest.approx(expected, abs=1e-14)


class TestMean:
    def test_theoretical_bounds(self):
        # delta*(gamma-1)/(gamma-2) and (delta**2/(delta+1)) * same factor.
        for hi in (1000, 31623):
            dist = TruncatedPowerLaw(2.5, 5, hi, "continuous")
            d = dist.mean()
            assert 12.5 * 0.99 <= d <= 15.0 * 1.01
            assert d == pytest.approx(math.fsum(k * dist.pmf(k) for k in range(5, hi + 1)), abs=1e-9)

    def test_discrete_below_continuous(self):
        cont = TruncatedPowerLaw(2.5, 5, 1000, "continuous")
        disc = TruncatedPowerLaw(2.5, 5, 1000, "discrete")
        assert disc.mean() < cont.mean()

    def test_mean_monotone_in_exponent(self):
        means = [TruncatedPowerLaw(e, 5, 500, "continuous").mean() for e in (2.1, 2.3, 2.5, 2.7, 2.9)]
        assert all(a >= b for a, b in zip(means, means[1:]))


class TestSample:
    def test_empty(self):
        dist = TruncatedPowerLaw(2.5, 5, 31)
        rng = np.random.default_rng(0)
        assert len(dist.sample(rng, 0)) == 0

    def test_support_and_determinism(self):
        dist = TruncatedPowerLaw(2.5, 5, 31, "discrete")
        a = dist.sample(np.random.default_rng(7), 10_000)
        b = dist.sample(np.random.default_rng(7), 10_000)
        assert np.array_equal(a, b)
        assert a.min() >= 5 and a.max() <= 31

    def test_empirical_ccdf_close(self):
        # Glivenko-Cantelli-style check at one million draws.
        dist = TruncatedPowerLaw(2.5, 5, 1000, "discrete")
        rng = np.random.default_rng(123)
        sample = dist.sample(rng, 1_000_000)
        ks = np.arange(5, 1001)
        counts = np.bincount(sample, minlength=1001)
        empirical = counts[::-1].cumsum()[::-1][ks] / len(sample)
        theory = dist.ccdf_array(ks)
        assert np.max(np.abs(empirical - theory)) < 0.005

    def test_quantile_monotone(self):
        dist = TruncatedPowerLaw(2.5, 5, 100, "continuous")
        us = np.linspace(0.0, 1.0, 101)
        qs = [dist.quantile(u) for u in us]
        assert all(a <= b for a, b in zip(qs, qs[1:]))
