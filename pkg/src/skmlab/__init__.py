"""skmlab: sparse K-means clustering with feature weights, and a numerical
lab for the risk bounds and consistency properties of its estimators."""

from skmlab._kernels import BACKEND
from skmlab.core import (
    CentroidSet,
    Dataset,
    DissimilarityTensor,
    Partition,
    Theta,
    WeightVector,
    hausdorff,
    hausdorff_directed,
    theta_distance,
    weighted_sqdist,
)
from skmlab.euclid import fit
from skmlab.general import fit_general
from skmlab.models import GaussMixModel, TwoBallModel, population_mean, reference_theta, sample_gauss_mix, sample_two_ball
from skmlab.weights import solve_weights

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CentroidSet",
    "Dataset",
    "DissimilarityTensor",
    "GaussMixModel",
    "Partition",
    "Theta",
    "TwoBallModel",
    "WeightVector",
    "fit",
    "fit_general",
    "hausdorff",
    "hausdorff_directed",
    "population_mean",
    "reference_theta",
    "sample_gauss_mix",
    "sample_two_ball",
    "solve_weights",
    "theta_distance",
    "weighted_sqdist",
]
