"""Risk evaluation lab: population risks, Rademacher-complexity estimators,
closed-form bounds, inequality audits, and the experiment harness."""

from skmlab.risk_lab.audits import peter_paul_check, reciprocal_bound_check, set_peter_paul_check
from skmlab.risk_lab.bounds import BoundReport, rc_bound_euclid, risk_gap_bound_euclid, risk_gap_bound_general
from skmlab.risk_lab.estimators import (
    CoverageReport,
    MCEstimate,
    hoeffding_coverage,
    population_risk_general,
    population_risk_mc,
    rc_mc_euclid,
    rc_mc_euclid_model,
    rc_mc_feature_pairs,
    rc_mc_partition,
)
from skmlab.risk_lab.experiments import (
    DiscreteModel,
    center_drift_check,
    compute_reference_optimum,
    continuity_probe,
    discrete_gap_experiment,
    discrete_optimum,
    risk_gap_experiment,
    tensor_from_atoms,
    verify_stationarity_two_ball,
)

__all__ = [
    "BoundReport",
    "CoverageReport",
    "DiscreteModel",
    "MCEstimate",
    "center_drift_check",
    "compute_reference_optimum",
    "continuity_probe",
    "discrete_gap_experiment",
    "discrete_optimum",
    "hoeffding_coverage",
    "peter_paul_check",
    "population_risk_general",
    "population_risk_mc",
    "rc_bound_euclid",
    "rc_mc_euclid",
    "rc_mc_euclid_model",
    "rc_mc_feature_pairs",
    "rc_mc_partition",
    "reciprocal_bound_check",
    "risk_gap_bound_euclid",
    "risk_gap_bound_general",
    "risk_gap_experiment",
    "set_peter_paul_check",
    "tensor_from_atoms",
    "verify_stationarity_two_ball",
]
