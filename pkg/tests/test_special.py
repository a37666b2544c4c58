import math

import numpy as np
import pytest

from stein_shrink import (
    SeriesControl,
    SeriesConvergenceError,
    expected_chi_norm,
    expected_chi_norm_asymptotic,
    inv_noncentral_chisq_mean,
    log_gamma,
    sample_chi_squared,
    sample_standard_normal,
    stream,
)

# Monte Carlo oracle for E[1/chi^2_20(625)]: mean of 1/x over 10^7
# noncentral chi-square draws (numpy default_rng(202608)).
_INVMOM_20_625_MC = 0.0015599326042125014
_INVMOM_20_625_MC_SE = 3.89e-08


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-12)
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-12)
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-1.0)


class TestExpectedChiNorm:
    def test_table_values(self):
        assert expected_chi_norm(10) == pytest.approx(2.918, abs=1e-3)
        assert expected_chi_norm(26) == pytest.approx(4.950, abs=1e-3)

    def test_p5_follows_formula_not_printed_table(self):
        # sqrt(2) Gamma(2.5)/Gamma(2) = 1.87997...; the printed 1.850 is wrong
        v = expected_chi_norm(5)
        assert v == pytest.approx(1.8799712059732514, rel=1e-12)
        assert abs(v - 1.850) > 1e-3

    def test_large_p_no_overflow(self):
        v = expected_chi_norm(2000)
        assert v == pytest.approx(math.sqrt(1999), rel=1e-3)

    def test_asymptotic_values(self):
        assert expected_chi_norm_asymptotic(5) == pytest.approx(1.875)
        assert expected_chi_norm_asymptotic(26) == pytest.approx(4.95)
        assert expected_chi_norm_asymptotic(2) == pytest.approx(0.75)

    def test_domain(self):
        for fn in (expected_chi_norm, expected_chi_norm_asymptotic):
            with pytest.raises(ValueError):
                fn(1)

    def test_gap_decays_at_cubed_sqrt_rate(self):
        # gap ~ (p-1)^(-3/2): quadrupling p-1 should shrink it about 8-fold
        def gap(p):
            return expected_chi_norm(p) - expected_chi_norm_asymptotic(p)

        for nu in (16, 64):
            ratio = gap(4 * nu + 1) / gap(nu + 1)
            assert 0.10 <= ratio <= 0.15


class TestInverseMoment:
    def test_central_values(self):
        assert inv_noncentral_chisq_mean(3, 0.0) == pytest.approx(1.0)
        assert inv_noncentral_chisq_mean(4, 0.0) == pytest.approx(0.5)

    def test_large_lambda_pinned_by_mc_oracle(self):
        v = inv_noncentral_chisq_mean(20, 625.0)
        assert abs(v - _INVMOM_20_625_MC) <= 4 * _INVMOM_20_625_MC_SE
        # Jensen lower bound 1/(lambda + p); the true value is ~1/641.05,
        # above the 1/643 the quadratic heuristic might suggest
        assert v > 1 / 645

    def test_domain(self):
        with pytest.raises(ValueError, match="diverges"):
            inv_noncentral_chisq_mean(2, 1.0)
        with pytest.raises(ValueError):
            inv_noncentral_chisq_mean(5, -1.0)

    def test_max_terms_exhaustion_carries_partial_sum(self):
        with pytest.raises(SeriesConvergenceError) as err:
            inv_noncentral_chisq_mean(5, 1e4, SeriesControl(rel_tol=1e-12, max_terms=3))
        assert err.value.partial_sum > 0

    def test_jensen_strict_lower_bound(self):
        for p in (3, 5, 10, 20):
            for lam in (0.0, 1.0, 25.0, 625.0):
                assert inv_noncentral_chisq_mean(p, lam) > 1 / (lam + p)

    def test_monotone_in_lambda_and_p(self):
        lams = [0.0, 0.5, 2.0, 10.0, 100.0, 1000.0]
        for p in (3, 7, 15):
            vals = [inv_noncentral_chisq_mean(p, lam) for lam in lams]
            assert all(a > b for a, b in zip(vals, vals[1:]))
        for lam in (0.0, 3.0, 50.0):
            vals = [inv_noncentral_chisq_mean(p, lam) for p in (3, 4, 6, 12, 30)]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_series_matches_simulation(self):
        rng = np.random.default_rng(99)
        n = 1_000_000
        for p in (3, 5, 10, 20):
            for lam in (0.0, 1.0, 25.0, 625.0):
                draws = (
                    rng.chisquare(p, n)
                    if lam == 0.0
                    else rng.noncentral_chisquare(p, lam, n)
                )
                inv = 1.0 / draws
                se = inv.std(ddof=1) / math.sqrt(n)
                assert abs(inv.mean() - inv_noncentral_chisq_mean(p, lam)) <= 4 * se


class TestSampling:
    def test_streams_are_reproducible_and_distinct(self):
        a = sample_standard_normal(stream(42, 0), 10)
        b = sample_standard_normal(stream(42, 0), 10)
        c = sample_standard_normal(stream(42, 1), 10)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_normal_moments(self):
        draws = sample_standard_normal(stream(3, 0), 1_000_000)
        assert abs(draws.mean()) <= 4e-3
        assert abs(draws.var(ddof=1) - 1.0) <= 0.01

    def test_chi_squared_mean(self):
        draws = sample_chi_squared(stream(4, 0), 19.0, 1_000_000)
        assert abs(draws.mean() - 19.0) <= 4 * math.sqrt(38 / 1e6)

    def test_chi_squared_domain(self):
        with pytest.raises(ValueError):
            sample_chi_squared(stream(0, 0), 0.0, 5)

    def test_series_control_validation(self):
        with pytest.raises(ValueError):
            SeriesControl(rel_tol=0.0)
        with pytest.raises(ValueError):
            SeriesControl(max_terms=0)
