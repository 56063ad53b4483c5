import numpy as np
import pytest
from scipy import stats

from skmlab.models import (
    GaussMixModel,
    TwoBallModel,
    population_mean,
    reference_theta,
    sample_gauss_mix,
    sample_two_ball,
)


class TestTwoBallSampler:
    model = TwoBallModel(p=4, r=2)

    def test_default_radius(self):
        assert self.model.radius == pytest.approx(np.sqrt(2) / 2)
        assert TwoBallModel(p=4, r=2, radius=np.sqrt(2)).radius == pytest.approx(np.sqrt(2))

    def test_support_invariant(self):
        data = sample_two_ball(self.model, 2000, seed=0)
        centers = self.model.centers
        d0 = np.linalg.norm(data.values - centers[0], axis=1)
        d1 = np.linalg.norm(data.values - centers[1], axis=1)
        assert (np.minimum(d0, d1) <= self.model.radius + 1e-12).all()
        assert data.bound_M == pytest.approx(1.0 + self.model.radius)

    def test_component_counts_binomial(self):
        n = 4000
        data = sample_two_ball(self.model, n, seed=1)
        d0 = np.linalg.norm(data.values - self.model.centers[0], axis=1)
        n0 = int((d0 <= self.model.radius + 1e-12).sum())
        assert abs(n0 - n / 2) <= 3 * np.sqrt(n / 4)

    def test_empirical_mean(self):
        data = sample_two_ball(self.model, 20000, seed=2)
        assert np.allclose(data.values.mean(axis=0), [0.5, 0.5, 0.0, 0.0], atol=0.02)

    def test_seeded_determinism(self):
        a = sample_two_ball(self.model, 50, seed=3)
        b = sample_two_ball(self.model, 50, seed=3)
        c = sample_two_ball(self.model, 50, seed=4)
        assert a.values.tobytes() == b.values.tobytes()
        assert a.values.tobytes() != c.values.tobytes()

    def test_radial_distribution_ks(self):
        # squared distance to own center has cdf (t / R^2)^(p/2)
        model = TwoBallModel(p=3, r=1)
        n = 10**4
        data = sample_two_ball(model, n, seed=5)
        centers = model.centers
        d0 = ((data.values - centers[0]) ** 2).sum(axis=1)
        d1 = ((data.values - centers[1]) ** 2).sum(axis=1)
        t = np.minimum(d0, d1)
        stat = stats.kstest(t, lambda x: (x / model.radius**2) ** (model.p / 2)).statistic
        assert stat < 1.628 / np.sqrt(n)  # 1% critical value

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            TwoBallModel(p=2, r=3)
        with pytest.raises(ValueError):
            TwoBallModel(p=2, r=1, radius=-0.1)


class TestGaussSampler:
    model = GaussMixModel(p=4, r=2, delta=1.0, sigma=0.5)

    def test_empirical_mean(self):
        data = sample_gauss_mix(self.model, 30000, seed=0)
        assert np.allclose(data.values.mean(axis=0), [0.5, 0.5, 0.0, 0.0], atol=0.02)

    def test_noise_coordinate_variance(self):
        data = sample_gauss_mix(self.model, 30000, seed=1)
        assert np.allclose(data.values[:, 2:].var(axis=0), self.model.sigma**2, rtol=0.05)

    def test_unknown_bound(self):
        data = sample_gauss_mix(self.model, 10, seed=2)
        assert data.bound_M is None

    def test_degenerate_offset_components_coincide(self):
        model = GaussMixModel(p=3, r=1, delta=0.0, sigma=1.0)
        data = sample_gauss_mix(model, 20000, seed=3)
        assert abs(data.values[:, 0].mean()) < 0.03

    def test_seeded_determinism(self):
        a = sample_gauss_mix(self.model, 40, seed=4)
        b = sample_gauss_mix(self.model, 40, seed=4)
        assert a.values.tobytes() == b.values.tobytes()


class TestClosedForms:
    def test_two_ball_mean(self):
        assert np.allclose(population_mean(TwoBallModel(p=5, r=3)), [0.5, 0.5, 0.5, 0.0, 0.0])
        assert np.allclose(population_mean(TwoBallModel(p=2, r=2)), [0.5, 0.5])

    def test_gauss_mean(self):
        m = GaussMixModel(p=4, r=2, delta=0.8, sigma=1.0)
        assert np.allclose(population_mean(m), [0.4, 0.4, 0.0, 0.0])

    def test_reference_theta_r1(self):
        theta = reference_theta(TwoBallModel(p=3, r=1))
        assert np.allclose(theta.weights.w, [1.0, 0.0, 0.0])

    def test_reference_theta_r4_norms(self):
        theta = reference_theta(TwoBallModel(p=6, r=4), s=2.0)
        assert np.linalg.norm(theta.weights.w) == pytest.approx(1.0)
        assert theta.weights.w.sum() == pytest.approx(2.0)
        with pytest.raises(ValueError):
            reference_theta(TwoBallModel(p=6, r=4), s=1.5)

    def test_reference_centers(self):
        theta = reference_theta(TwoBallModel(p=4, r=2))
        assert np.allclose(theta.structure.centers, [[0, 0, 0, 0], [1, 1, 0, 0]])
