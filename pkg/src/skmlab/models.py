"""Seeded samplers and closed-form quantities for the two generative models
used by the experiments: a two-ball uniform mixture and a spherical Gaussian
mixture.

The two-ball components share no support when the default radius is used
(the balls are tangent); the Gaussian components always overlap, which is
exactly what the center-drift experiment probes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from skmlab.core import CentroidSet, Dataset, Theta, WeightVector
from skmlab.rng import stream


@dataclass(frozen=True)
class TwoBallModel:
    """Uniform mixture on two p-balls of equal radius.

    Component centers are the origin and the vector with ones on the first r
    coordinates.  Default radius is sqrt(r)/2, which makes the balls tangent;
    pass radius=sqrt(r) explicitly for the overlapping variant.
    """

    p: int
    r: int
    radius: float | None = None

    def __post_init__(self):
        if not 1 <= self.r <= self.p:
            raise ValueError("need 1 <= r <= p")
        if self.radius is None:
            object.__setattr__(self, "radius", float(np.sqrt(self.r) / 2.0))
        elif self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def centers(self) -> np.ndarray:
        a = np.zeros((2, self.p))
        a[1, : self.r] = 1.0
        return a

    @property
    def bound(self) -> float:
        return 1.0 + float(self.radius)


@dataclass(frozen=True)
class GaussMixModel:
    """Even mixture of two spherical Gaussians separated by delta on the
    first r coordinates."""

    p: int
    r: int
    delta: float
    sigma: float

    def __post_init__(self):
        if not 1 <= self.r <= self.p:
            raise ValueError("need 1 <= r <= p")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.delta < 0:
            # delta = 0 is the degenerate coinciding-component case, legal
            # for sampling; separation-dependent checks require delta > 0
            raise ValueError("delta must be nonnegative")

    @property
    def centers(self) -> np.ndarray:
        mu = np.zeros((2, self.p))
        mu[1, : self.r] = self.delta
        return mu


Model = TwoBallModel | GaussMixModel


def draw(model: Model, n: int, rng: np.random.Generator) -> np.ndarray:
    """n rows from the model using the supplied generator.

    Consumption order is fixed (coins, directions/noise, radii) so a stream
    split into chunks reproduces the unchunked draws.
    """
    centers = model.centers
    coins = rng.integers(0, 2, size=n)
    if isinstance(model, TwoBallModel):
        g = rng.standard_normal((n, model.p))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        u = rng.random(n)
        radii = model.radius * u ** (1.0 / model.p)
        return centers[coins] + g * radii[:, None]
    z = rng.standard_normal((n, model.p))
    return centers[coins] + model.sigma * z


def sample_two_ball(model: TwoBallModel, n: int, seed: int) -> Dataset:
    """Seeded sample from the two-ball mixture; the coordinate bound
    1 + radius is declared on the result."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = stream(seed, "two-ball-sample")
    return Dataset(values=draw(model, n, rng), bound_M=model.bound)


def sample_gauss_mix(model: GaussMixModel, n: int, seed: int) -> Dataset:
    """Seeded sample from the Gaussian mixture.  The support is not compact,
    so no coordinate bound is declared and bound-based evaluators refuse the
    result unless the caller supplies a truncation level."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = stream(seed, "gauss-mix-sample")
    return Dataset(values=draw(model, n, rng), bound_M=None)


def population_mean(model: Model) -> np.ndarray:
    """Closed-form mean: the midpoint of the two component centers."""
    return model.centers.mean(axis=0)


def reference_theta(model: TwoBallModel, s: float | None = None) -> Theta:
    """The candidate stationary point: component centers as the centroid set
    and the L2-normalized flat weight on the informative block.

    The flat weight direction fixes only the ray; normalizing to unit L2 norm
    picks the feasible point that maximizes the linear weight objective along
    it.  Feasibility requires s >= sqrt(r).
    """
    w = np.zeros(model.p)
    w[: model.r] = 1.0 / np.sqrt(model.r)
    l1 = float(np.sqrt(model.r))
    if s is None:
        s = l1
    if s + 1e-9 < l1:
        raise ValueError(f"budget s={s} cannot carry the reference weight (needs >= {l1})")
    return Theta(
        weights=WeightVector(w=w, s=float(s)),
        structure=CentroidSet(centers=model.centers),
    )
