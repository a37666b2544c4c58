import math

import numpy as np
import pytest

from stein_shrink import (
    EstimatorSpec,
    ProblemConfig,
    estimate_delta_mc,
    estimate_exceedance_prob,
    estimate_risk_mc,
    risk_delta_exact,
    simulate_cloud,
)


class TestSimulateCloud:
    def test_fig2_regime_moments(self):
        cfg = ProblemConfig(20, 25.0, seed=7)
        cloud = simulate_cloud(cfg, 2000)
        x1 = np.array([pt.x1 for pt in cloud.points])
        r2 = np.array([pt.r for pt in cloud.points]) ** 2
        assert len(cloud.points) == 2000
        assert abs(x1.mean() - 25.0) <= 4 / math.sqrt(2000)
        assert abs(r2.mean() - 19.0) <= 4 * math.sqrt(38 / 2000)

    def test_bit_identical_for_same_seed(self):
        cfg = ProblemConfig(5, 2.0, seed=11)
        a = simulate_cloud(cfg, 1500)
        b = simulate_cloud(cfg, 1500)
        assert a.points == b.points

    def test_different_seed_differs(self):
        a = simulate_cloud(ProblemConfig(5, 2.0, seed=1), 100)
        b = simulate_cloud(ProblemConfig(5, 2.0, seed=2), 100)
        assert a.points != b.points

    def test_single_point(self):
        cloud = simulate_cloud(ProblemConfig(4, 1.0, seed=0), 1)
        assert len(cloud.points) == 1
        assert cloud.points[0].r >= 0

    def test_p1_rejected(self):
        with pytest.raises(ValueError):
            simulate_cloud(ProblemConfig(1, 2.0, seed=0), 10)


class TestRiskEstimation:
    def test_identity_risk_is_p(self):
        cfg = ProblemConfig(7, 3.0, seed=5)
        est = estimate_risk_mc(cfg, EstimatorSpec.identity(), 400_000)
        assert abs(est.mean - 7.0) <= 4 * est.stderr

    def test_window_edge_matches_identity_risk(self):
        p = 6
        cfg = ProblemConfig(p, 2.0, seed=5)
        est = estimate_risk_mc(cfg, EstimatorSpec.shrink(2.0 * (p - 2)), 400_000)
        assert abs(est.mean - p) <= 4 * est.stderr

    def test_workers_do_not_change_result(self):
        cfg = ProblemConfig(5, 1.0, seed=9)
        spec = EstimatorSpec.shrink(3.0)
        a = estimate_risk_mc(cfg, spec, 700_000, workers=1)
        b = estimate_risk_mc(cfg, spec, 700_000, workers=4)
        assert (a.mean, a.stderr, a.n) == (b.mean, b.stderr, b.n)

    def test_z_path_agrees_with_full_vector_path(self):
        cfg = ProblemConfig(6, 2.0, seed=21)
        spec = EstimatorSpec.shrink(4.0)
        n = 40_000
        z = estimate_risk_mc(cfg, spec, n)
        full = estimate_risk_mc(cfg, spec, n, via_full_vectors=True)
        joint = math.hypot(z.stderr, full.stderr)
        assert abs(z.mean - full.mean) <= 4 * joint

    def test_full_vector_path_at_theta_zero(self):
        cfg = ProblemConfig(5, 0.0, seed=21)
        est = estimate_risk_mc(cfg, EstimatorSpec.identity(), 40_000, via_full_vectors=True)
        assert abs(est.mean - 5.0) <= 4 * est.stderr


class TestDeltaEstimation:
    def test_c_zero_gives_exact_zero(self):
        est = estimate_delta_mc(ProblemConfig(5, 2.0, seed=1), 0.0, 10_000)
        assert est.mean == 0.0
        assert est.stderr == 0.0

    def test_matches_exact_formula(self):
        cfg = ProblemConfig(20, 25.0, seed=31)
        est = estimate_delta_mc(cfg, 18.0, 300_000)
        assert abs(est.mean - risk_delta_exact(20, 25.0, 18.0)) <= 4 * est.stderr

    def test_accepts_estimator_spec(self):
        cfg = ProblemConfig(5, 20.0, seed=31)
        est = estimate_delta_mc(cfg, EstimatorSpec.shrink_a(3.0, 10.0), 100_000)
        assert est.n == 100_000

    def test_paired_beats_unpaired(self):
        p, t, c, n = 8, 3.0, 6.0, 200_000
        paired = estimate_delta_mc(ProblemConfig(p, t, seed=41), c, n)
        r0 = estimate_risk_mc(ProblemConfig(p, t, seed=42), EstimatorSpec.identity(), n)
        r1 = estimate_risk_mc(ProblemConfig(p, t, seed=43), EstimatorSpec.shrink(c), n)
        unpaired_se = math.hypot(r0.stderr, r1.stderr)
        assert paired.stderr < unpaired_se

    def test_norm_sq_mean_identity(self):
        # sample mean of |X|^2 near theta^2 + p with variance (2p + 4 theta^2)/n
        cfg = ProblemConfig(100, 5.0, seed=17)
        cloud = simulate_cloud(cfg, 100_000)
        nsq = np.array([pt.x1**2 + pt.r**2 for pt in cloud.points])
        gate = 4 * math.sqrt((2 * 100 + 4 * 25.0) / 100_000)
        assert abs(nsq.mean() - 125.0) <= gate


class TestExceedance:
    def test_theta_zero_is_certain(self):
        est = estimate_exceedance_prob(ProblemConfig(4, 0.0, seed=0), 10_000)
        assert est.mean == 1.0
        assert est.stderr == 0.0

    def test_large_theta_limit_half(self):
        est = estimate_exceedance_prob(ProblemConfig(20, 1e4, seed=2), 200_000)
        assert abs(est.mean - 0.5) <= 4 * est.stderr

    def test_small_theta_near_one(self):
        est = estimate_exceedance_prob(ProblemConfig(20, 1.0, seed=2), 100_000)
        assert est.mean > 0.99

    def test_p1_supported(self):
        est = estimate_exceedance_prob(ProblemConfig(1, 2.0, seed=3), 50_000)
        assert 0 < est.mean < 1
