import itertools

import numpy as np
import pytest

from skmlab.core import CentroidSet, Dataset, DissimilarityTensor, Partition, WeightVector
from skmlab.general import squared_diff_tensor, voronoi_partition_family
from skmlab.models import GaussMixModel, TwoBallModel, population_mean, reference_theta, sample_two_ball
from skmlab.risk_lab.estimators import (
    hoeffding_coverage,
    population_risk_general,
    population_risk_mc,
    rc_mc_euclid,
    rc_mc_euclid_model,
    rc_mc_feature_pairs,
    rc_mc_partition,
)
from skmlab.rng import stream


class TestPopulationRiskMC:
    model = TwoBallModel(p=4, r=2)

    def test_single_center_at_mean_is_zero(self):
        mu = population_mean(self.model)
        w = reference_theta(self.model).weights
        est = population_risk_mc(self.model, w, CentroidSet(centers=mu[None, :]), 50000, seed=0)
        assert abs(est.value) <= 3 * est.std_error + 1e-12

    def test_zero_weights_exact_zero(self):
        w = WeightVector(w=np.zeros(4), s=1.0)
        A = CentroidSet(centers=self.model.centers)
        est = population_risk_mc(self.model, w, A, 1000, seed=1)
        assert est.value == 0.0
        assert est.std_error == 0.0

    def test_extra_centers_cannot_hurt(self):
        mu = population_mean(self.model)
        w = reference_theta(self.model).weights
        A = CentroidSet(centers=np.vstack([mu, [0.2, 0.1, 0.0, 0.3]]))
        est = population_risk_mc(self.model, w, A, 50000, seed=2)
        assert est.value <= 0 + 3 * est.std_error

    def test_seeded_determinism(self):
        w = reference_theta(self.model).weights
        A = CentroidSet(centers=self.model.centers)
        a = population_risk_mc(self.model, w, A, 20000, seed=3)
        b = population_risk_mc(self.model, w, A, 20000, seed=3)
        assert a.value == b.value and a.std_error == b.std_error

    def test_reference_risk_regression_value(self):
        # high-precision seeded estimate at the reference parameters, frozen
        model = TwoBallModel(p=4, r=2)
        theta = reference_theta(model)
        est = population_risk_mc(model, theta.weights, CentroidSet(centers=model.centers), 10**6, seed=7)
        assert est.value == pytest.approx(-0.35355, abs=4 * est.std_error + 5e-4)


class TestPopulationRiskGeneral:
    def test_zero_tables(self):
        probs = np.full(4, 0.25)
        tables = np.zeros((4, 4, 2))
        w = WeightVector(w=[0.5, 0.5], s=1.0)
        assert population_risk_general(probs, tables, w, [0, 0, 1, 1], K=2) == 0.0

    def test_zero_weights(self):
        rng = stream(4, "prg")
        tables = rng.uniform(0, 1, size=(4, 4, 2))
        tables = (tables + tables.transpose(1, 0, 2)) / 2
        for i in range(4):
            tables[i, i, :] = 0
        probs = np.full(4, 0.25)
        w = WeightVector(w=[0.0, 0.0], s=1.0)
        assert population_risk_general(probs, tables, w, [0, 1, 0, 1], K=2) == 0.0

    def test_hand_enumerated_sum(self):
        # 4 equiprobable atoms in 1-D at 0, 1, 4, 5; squared differences
        atoms = np.array([0.0, 1.0, 4.0, 5.0])
        tables = ((atoms[:, None] - atoms[None, :]) ** 2)[:, :, None]
        probs = np.full(4, 0.25)
        labels = np.array([0, 0, 1, 1])
        w = WeightVector(w=[1.0], s=1.0)
        # independent 16-term double loop
        term1 = sum(
            0.25 * 0.25 * (atoms[u] - atoms[v]) ** 2 for u in range(4) for v in range(4)
        )
        term2 = 0.0
        for k in range(2):
            members = [u for u in range(4) if labels[u] == k]
            mass = 0.25 * len(members)
            term2 += sum(0.25 * 0.25 * (atoms[u] - atoms[v]) ** 2 for u in members for v in members) / mass
        expected = -(term1 - term2)
        got = population_risk_general(probs, tables, w, labels, K=2)
        assert got == pytest.approx(expected, rel=1e-12)

    def test_zero_mass_cell_rejected(self):
        probs = np.array([0.5, 0.5, 0.0, 0.0])
        tables = np.zeros((4, 4, 1))
        w = WeightVector(w=[1.0], s=1.0)
        with pytest.raises(ValueError, match="zero mass"):
            population_risk_general(probs, tables, w, [0, 0, 1, 1], K=2)


class TestRcPartition:
    def test_single_cell_family_matches_asymptotic(self):
        n = 400
        X = Dataset(values=np.zeros((n, 1)))
        family = [Partition(labels=np.zeros(n, dtype=int), K=1)]
        est = rc_mc_partition(X, family, 4000, seed=0)
        assert est.value == pytest.approx(np.sqrt(2 / (np.pi * n)), rel=0.1)

    def test_single_point(self):
        X = Dataset(values=[[0.0]])
        family = [Partition(labels=[0], K=1)]
        est = rc_mc_partition(X, family, 500, seed=1)
        assert est.value == 1.0
        assert est.std_error == 0.0

    def test_monotone_in_family(self):
        model = TwoBallModel(p=3, r=1)
        data = sample_two_ball(model, 60, seed=2)
        small = voronoi_partition_family(data, 2, 3, seed=3)
        large = small + voronoi_partition_family(data, 2, 25, seed=4)
        a = rc_mc_partition(data, small, 500, seed=5)
        b = rc_mc_partition(data, large, 500, seed=5)
        assert b.value >= a.value - 1e-12

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            rc_mc_partition(Dataset(values=[[0.0]]), [], 10, seed=0)


class TestRcFeaturePairs:
    def test_zero_tensor(self):
        D = DissimilarityTensor(d=np.zeros((6, 6, 2)), bound_M=0.0)
        family = [Partition(labels=np.zeros(6, dtype=int), K=1)]
        est = rc_mc_feature_pairs(D, 0, family, 200, seed=0)
        assert est.value == 0.0

    def test_constant_tensor_reduces_to_sign_mean(self):
        n, M = 8, 2.5
        d = np.full((n, n, 1), M)
        for i in range(n):
            d[i, i, 0] = 0.0
        D = DissimilarityTensor(d=d, bound_M=M)
        family = [Partition(labels=np.zeros(n, dtype=int), K=1)]
        est = rc_mc_feature_pairs(D, 0, family, 3000, seed=1)
        # exact E|mean of 4 signs| by enumeration: sum over 2^4 sign patterns
        half = n // 2
        exact = np.mean([abs(sum(sig)) / half for sig in itertools.product([-1, 1], repeat=half)])
        assert est.value == pytest.approx(M * exact, rel=0.05)

    def test_envelope_bound(self):
        rng = stream(2, "rcj-envelope")
        M = 1.0
        d = rng.uniform(0, M, size=(10, 10, 2))
        d = (d + d.transpose(1, 0, 2)) / 2
        for i in range(10):
            d[i, i, :] = 0
        D = DissimilarityTensor(d=d, bound_M=M)
        family = [Partition(labels=np.array([0, 1] * 5), K=2)]
        est = rc_mc_feature_pairs(D, 1, family, 500, seed=3)
        assert est.value <= M + 1e-12


class TestRcEuclid:
    model = TwoBallModel(p=3, r=2)

    def test_nonnegative_by_construction(self):
        est = rc_mc_euclid_model(self.model, s=1.5, K=2, n=30, n_draws=40, seed=0)
        assert est.value >= 0.0

    def test_se_shrinks_with_draws(self):
        a = rc_mc_euclid_model(self.model, s=1.5, K=2, n=30, n_draws=50, seed=1)
        b = rc_mc_euclid_model(self.model, s=1.5, K=2, n=30, n_draws=200, seed=1)
        assert b.std_error < a.std_error
        assert 0.3 <= b.std_error / a.std_error <= 0.85  # about 1/sqrt(4)

    def test_unbounded_model_rejected(self):
        with pytest.raises(ValueError):
            rc_mc_euclid_model(GaussMixModel(p=3, r=1, delta=1.0, sigma=1.0), s=1.0, K=2, n=20, n_draws=10, seed=0)

    def test_data_entry_point(self):
        data = sample_two_ball(self.model, 40, seed=4)
        mu = population_mean(self.model)
        est = rc_mc_euclid(data, mu, 1.5, data.bound_M, 2, 30, seed=5)
        assert est.value >= 0.0
        assert est.n_draws == 30


class TestHoeffdingCoverage:
    model = TwoBallModel(p=4, r=2)

    def test_zero_weights_full_coverage(self):
        w = WeightVector(w=np.zeros(4), s=1.5)
        report = hoeffding_coverage(self.model, w, n=50, t=0.05, reps=60, seed=0)
        assert report.coverage == 1.0

    def test_reference_weights_coverage(self):
        w = reference_theta(self.model, s=1.5).weights
        report = hoeffding_coverage(self.model, w, n=100, t=0.05, reps=200, seed=1)
        assert report.coverage >= report.target - report.allowance
        assert report.passed

    def test_unbounded_model_rejected(self):
        w = WeightVector(w=[1.0, 0.0, 0.0], s=1.0)
        with pytest.raises(ValueError):
            hoeffding_coverage(GaussMixModel(p=3, r=1, delta=1.0, sigma=1.0), w, 50, 0.05, 10, seed=0)
