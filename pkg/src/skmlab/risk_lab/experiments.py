"""Experiment harness: reference optima, risk-gap decay, continuity probes,
stationarity verification, center-drift checks, and the discrete-model
convergence experiment for the general-distance form.

Comparisons between nearby parameter values are evaluated on shared draws
(common random numbers); the difference estimates then carry standard errors
small enough for the 3-sigma margins used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from skmlab.core import CentroidSet, Dataset, DissimilarityTensor, Partition, Theta, WeightVector
from skmlab.euclid import fit
from skmlab.general import empirical_risk_general, fit_general, gains_general
from skmlab.models import Model, TwoBallModel, draw, population_mean, reference_theta
from skmlab.parallel import parallel_map
from skmlab.partitions import enumerate_partitions
from skmlab.risk_lab.bounds import risk_gap_bound_euclid
from skmlab.risk_lab.estimators import MCEstimate, objective_integrand, population_risk_mc, population_risk_general
from skmlab.rng import child_seed, stream
from skmlab.weights import project_feasible, random_feasible_w, solve_weights


# ---------------------------------------------------------------------------
# reference optimum and risk-gap decay


@dataclass(frozen=True)
class ReferenceOptimum:
    theta: Theta
    risk: MCEstimate
    fit_objective: float
    n_fit: int
    seed: int


def compute_reference_optimum(
    model: Model,
    K: int,
    s: float,
    *,
    n_fit: int = 10**6,
    n_starts: int = 50,
    refine_draws: int = 10**7,
    seed: int = 0,
) -> ReferenceOptimum:
    """Operational stand-in for the population minimizer: the best multi-start
    fit on one large sample, with its risk refined by high-precision MC."""
    data = Dataset(values=draw(model, n_fit, stream(seed, "reference-sample")), bound_M=getattr(model, "bound", None))
    result = fit(data, K, s, n_starts=n_starts, seed=child_seed(seed, "reference-fit"))
    risk = population_risk_mc(model, result.weights, result.centers, refine_draws, child_seed(seed, "reference-risk"))
    return ReferenceOptimum(theta=result.theta, risk=risk, fit_objective=result.objective, n_fit=n_fit, seed=seed)


@dataclass(frozen=True)
class GapRow:
    n: int
    rep: int
    gap: float
    std_error: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.gap <= self.bound


@dataclass(frozen=True)
class GapSummary:
    n: int
    median: float
    q25: float
    q75: float
    frac_within_bound: float


@dataclass(frozen=True)
class RiskGapResult:
    rows: list[GapRow]
    summary: list[GapSummary]
    reference: ReferenceOptimum


def risk_gap_experiment(
    model: Model,
    K: int,
    s: float,
    n_grid,
    reps: int,
    seed: int,
    *,
    reference: ReferenceOptimum | None = None,
    fit_starts: int = 10,
    gap_draws: int = 200_000,
    t: float = 0.05,
    threads: int = 1,
    reference_opts: dict | None = None,
) -> RiskGapResult:
    """Fit on fresh samples across a grid of sample sizes and record the risk
    gap to the reference optimum, each gap estimated on shared draws."""
    M = getattr(model, "bound", None)
    if reference is None:
        reference = compute_reference_optimum(model, K, s, seed=seed, **(reference_opts or {}))
    n_grid = [int(n) for n in n_grid]
    mu = population_mean(model)
    ref_centers = reference.theta.structure.centers
    ref_w = reference.theta.weights.w

    tasks = [(ni, n, rep) for ni, n in enumerate(n_grid) for rep in range(reps)]

    def run(task):
        ni, n, rep = task
        idx = ni * reps + rep
        data = Dataset(values=draw(model, n, stream(seed, "gap-sample", idx)), bound_M=M)
        fitted = fit(data, K, s, n_starts=fit_starts, seed=child_seed(seed, "gap-fit", idx))
        rng = stream(seed, "gap-mc", idx)
        xs = draw(model, gap_draws, rng)
        f_hat = objective_integrand(xs, mu, fitted.centers.centers, fitted.weights.w)
        f_ref = objective_integrand(xs, mu, ref_centers, ref_w)
        diff = f_ref - f_hat  # R(theta_hat) - R(theta_ref) per draw
        gap = float(diff.mean())
        se = float(diff.std(ddof=1) / np.sqrt(gap_draws))
        bound = risk_gap_bound_euclid(s, M, K, n, model.p, t).bound_total
        return GapRow(n=n, rep=rep, gap=gap, std_error=se, bound=bound)

    rows = parallel_map(run, tasks, threads)
    summary = []
    for n in n_grid:
        gaps = np.array([r.gap for r in rows if r.n == n])
        hits = np.mean([r.within_bound for r in rows if r.n == n])
        summary.append(
            GapSummary(
                n=n,
                median=float(np.median(gaps)),
                q25=float(np.quantile(gaps, 0.25)),
                q75=float(np.quantile(gaps, 0.75)),
                frac_within_bound=float(hits),
            )
        )
    return RiskGapResult(rows=rows, summary=summary, reference=reference)


# ---------------------------------------------------------------------------
# continuity probe


@dataclass(frozen=True)
class ModulusRow:
    radius: float
    modulus: float
    std_error: float


def continuity_probe(
    model: Model,
    theta0: Theta,
    radii,
    n_probe: int,
    seed: int,
    *,
    n_draws: int = 200_000,
    threads: int = 1,
) -> list[ModulusRow]:
    """Max risk change over random feasible perturbations at each parameter
    distance, sharing one draw set across every comparison."""
    mu = population_mean(model)
    xs = draw(model, n_draws, stream(seed, "continuity-mc"))
    w0 = theta0.weights
    A0 = theta0.structure.centers
    f0 = objective_integrand(xs, mu, A0, w0.w)
    p = w0.p
    radii = [float(r) for r in radii]

    def probe(task):
        ri, i = task
        rho = radii[ri]
        rng = stream(seed, "continuity-perturb", ri * n_probe + i)
        gw = rng.standard_normal(p)
        dw = gw / max(np.linalg.norm(gw), 1e-12) * rho * rng.uniform(0.25, 1.0)
        w_new = project_feasible(w0.w + dw, w0.s)
        gA = rng.standard_normal(A0.shape)
        gA /= np.maximum(np.linalg.norm(gA, axis=1, keepdims=True), 1e-12)
        steps = rho * rng.uniform(0.25, 1.0, size=(A0.shape[0], 1))
        A_new = A0 + gA * steps
        diff = f0 - objective_integrand(xs, mu, A_new, w_new.w)
        return abs(float(diff.mean())), float(diff.std(ddof=1) / np.sqrt(n_draws))

    rows = []
    for ri, rho in enumerate(radii):
        if rho == 0.0:
            rows.append(ModulusRow(radius=0.0, modulus=0.0, std_error=0.0))
            continue
        results = parallel_map(probe, [(ri, i) for i in range(n_probe)], threads)
        vals = np.array([v for v, _ in results])
        ses = np.array([se for _, se in results])
        top = int(np.argmax(vals))
        rows.append(ModulusRow(radius=rho, modulus=float(vals[top]), std_error=float(ses[top])))
    return rows


# ---------------------------------------------------------------------------
# stationarity of the two-ball reference point


@dataclass(frozen=True)
class ComparisonStats:
    """Worst paired comparison: the smallest mean difference and its SE."""

    worst_diff: float
    worst_se: float
    n_cases: int

    @property
    def passed(self) -> bool:
        return self.worst_diff >= -3.0 * self.worst_se


@dataclass(frozen=True)
class FixedPointStats:
    displacements: list[float]
    std_errors: list[float]
    counts: list[int]

    @property
    def passed(self) -> bool:
        return all(d <= 3.0 * se for d, se in zip(self.displacements, self.std_errors))


@dataclass(frozen=True)
class StationarityReport:
    center_check: ComparisonStats
    weight_check: ComparisonStats
    fixed_point: FixedPointStats

    @property
    def passed(self) -> bool:
        return self.center_check.passed and self.weight_check.passed and self.fixed_point.passed


def _lloyd_map_stats(xs: np.ndarray, centers: np.ndarray, wvec: np.ndarray, block: int) -> FixedPointStats:
    """One population Lloyd step by MC: conditional means of the weighted
    nearest-center cells, with displacement measured on the leading block."""
    dists = np.stack([((xs - c) ** 2) @ wvec for c in centers])
    labels = np.argmin(dists, axis=0)
    disp, ses, counts = [], [], []
    for k in range(centers.shape[0]):
        cell = xs[labels == k]
        nk = cell.shape[0]
        mean = cell.mean(axis=0)
        var = cell.var(axis=0, ddof=1)
        disp.append(float(np.linalg.norm((mean - centers[k])[:block])))
        ses.append(float(np.sqrt(var[:block].sum() / nk)))
        counts.append(int(nk))
    return FixedPointStats(displacements=disp, std_errors=ses, counts=counts)


def verify_stationarity_two_ball(
    model: TwoBallModel,
    s: float,
    n_perturb: int,
    mc_draws: int,
    seed: int,
    *,
    threads: int = 1,
) -> StationarityReport:
    """Verify that the reference (weights, centers) pair is blockwise optimal:
    no random center perturbation lowers the risk at fixed weights, no random
    feasible weight beats the reference at fixed centers, and the population
    Lloyd map fixes the centers — all within 3 standard errors."""
    theta0 = reference_theta(model, s)
    mu = population_mean(model)
    xs = draw(model, mc_draws, stream(seed, "stationarity-mc"))
    A0 = theta0.structure.centers
    w0 = theta0.weights
    f0 = objective_integrand(xs, mu, A0, w0.w)
    sqrt_n = np.sqrt(mc_draws)

    def perturb_centers(i):
        rng = stream(seed, "stationarity-center", i)
        g = rng.standard_normal(A0.shape)
        g /= np.maximum(np.linalg.norm(g, axis=1, keepdims=True), 1e-12)
        radii = rng.uniform(0.02, 0.5, size=(A0.shape[0], 1))
        A_new = A0 + g * radii
        diff = f0 - objective_integrand(xs, mu, A_new, w0.w)  # R(A') - R(A0)
        return float(diff.mean()), float(diff.std(ddof=1) / sqrt_n)

    def perturb_weights(i):
        rng = stream(seed, "stationarity-weight", i)
        if i % 4 == 0 and model.p > model.r:
            # adversarial rebalance: push some reference mass onto noise axes
            shift = rng.uniform(0.05, 0.5)
            v = w0.w * (1.0 - shift)
            noise_axis = int(rng.integers(model.r, model.p))
            v[noise_axis] += shift
            w_new = project_feasible(v, s)
        else:
            w_new = random_feasible_w(model.p, s, rng)
        diff = f0 - objective_integrand(xs, mu, A0, w_new.w)  # g(w0) - g(w')
        return float(diff.mean()), float(diff.std(ddof=1) / sqrt_n)

    def worst(results) -> ComparisonStats:
        t_stats = [(d + 3.0 * se, d, se) for d, se in results]
        _, d, se = min(t_stats)
        return ComparisonStats(worst_diff=d, worst_se=se, n_cases=len(results))

    center_stats = worst(parallel_map(perturb_centers, range(n_perturb), threads))
    weight_stats = worst(parallel_map(perturb_weights, range(n_perturb), threads))
    fixed_point = _lloyd_map_stats(xs, A0, w0.w, model.p)
    return StationarityReport(center_check=center_stats, weight_check=weight_stats, fixed_point=fixed_point)


# ---------------------------------------------------------------------------
# one-step center drift (Lloyd fixed-point probe for any two-center model)


@dataclass(frozen=True)
class DriftReport:
    displacements: list[float]
    std_errors: list[float]
    counts: list[int]

    @property
    def all_moved(self) -> bool:
        return all(d > 3.0 * se for d, se in zip(self.displacements, self.std_errors))

    @property
    def any_moved(self) -> bool:
        return any(d > 3.0 * se for d, se in zip(self.displacements, self.std_errors))


def center_drift_check(model: Model, n_mc: int, seed: int) -> DriftReport:
    """One-step population Lloyd update of the component centers under the
    flat informative-block weight; displacement is measured on that block.

    Overlapping components (Gaussian mixtures) drift — the truncated
    conditional means move off the component centers — while disjoint
    supports stay put up to MC noise.
    """
    w = np.zeros(model.p)
    w[: model.r] = 1.0 / np.sqrt(model.r)
    xs = draw(model, n_mc, stream(seed, "drift-mc"))
    stats = _lloyd_map_stats(xs, model.centers, w, model.r)
    return DriftReport(displacements=stats.displacements, std_errors=stats.std_errors, counts=stats.counts)


# ---------------------------------------------------------------------------
# finite discrete model for the general-distance convergence experiment


@dataclass(frozen=True)
class DiscreteModel:
    """Finite support model: m atoms with probabilities and per-feature
    pairwise dissimilarity tables."""

    probs: np.ndarray
    tables: np.ndarray  # (m, m, p), symmetric, zero diagonal

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float).reshape(-1)
        tables = np.asarray(self.tables, dtype=float)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "tables", tables)
        if abs(probs.sum() - 1.0) > 1e-9 or probs.min() < 0:
            raise ValueError("atom probabilities must be nonnegative and sum to 1")
        m = probs.shape[0]
        if tables.shape[:2] != (m, m) or tables.ndim != 3:
            raise ValueError("tables must have shape (m, m, p)")

    @property
    def m(self) -> int:
        return self.probs.shape[0]

    @property
    def p(self) -> int:
        return self.tables.shape[2]

    @property
    def bound(self) -> float:
        return float(self.tables.max(initial=0.0))

    def delta_mass(self, K: int) -> float:
        """Smallest cell mass over every K-partition of the atoms (the
        delta of the cell-mass condition)."""
        best = np.inf
        for labels in enumerate_partitions(self.m, K):
            masses = [self.probs[labels == k].sum() for k in range(K)]
            best = min(best, min(masses))
        return float(best)


def discrete_optimum(dm: DiscreteModel, K: int, s: float) -> tuple[np.ndarray, WeightVector, float]:
    """Exact population optimum over atom partitions, with the weight step
    solved exactly per partition.  Returns (atom labels, weights, risk)."""
    best_risk = np.inf
    best_labels = None
    best_w = None
    pp = np.outer(dm.probs, dm.probs)
    for labels in enumerate_partitions(dm.m, K):
        gains = np.empty(dm.p)
        for j in range(dm.p):
            tj = dm.tables[:, :, j]
            term1 = float((pp * tj).sum())
            term2 = 0.0
            for k in range(K):
                idx = np.flatnonzero(labels == k)
                block = np.ix_(idx, idx)
                term2 += float((pp[block] * tj[block]).sum()) / float(dm.probs[idx].sum())
            gains[j] = term1 - term2
        w = solve_weights(gains, s)
        risk = -float(w.w @ gains)
        if risk < best_risk:
            best_risk, best_labels, best_w = risk, labels, w
    return best_labels, best_w, float(best_risk)


def tensor_from_atoms(dm: DiscreteModel, atom_idx: np.ndarray) -> DissimilarityTensor:
    """Dissimilarity tensor of a sample given by atom indices."""
    d = dm.tables[np.ix_(atom_idx, atom_idx)]
    return DissimilarityTensor(d=d, bound_M=dm.bound)


@dataclass(frozen=True)
class DiscreteGapRow:
    n: int
    rep: int
    gap: float


@dataclass(frozen=True)
class DiscreteGapResult:
    rows: list[DiscreteGapRow]
    medians: dict
    risk_star: float


def discrete_gap_experiment(
    dm: DiscreteModel,
    K: int,
    s: float,
    n_grid,
    reps: int,
    seed: int,
    *,
    restarts: int = 5,
    threads: int = 1,
) -> DiscreteGapResult:
    """Empirical risk of the fitted partition versus the exact population
    optimum of the discrete model, across sample sizes."""
    _, _, risk_star = discrete_optimum(dm, K, s)
    n_grid = [int(n) for n in n_grid]
    tasks = [(ni, n, rep) for ni, n in enumerate(n_grid) for rep in range(reps)]

    def run(task):
        ni, n, rep = task
        idx = ni * reps + rep
        rng = stream(seed, "discrete-sample", idx)
        atom_idx = rng.choice(dm.m, size=n, p=dm.probs)
        D = tensor_from_atoms(dm, atom_idx)
        fitted = fit_general(D, K, s, n_starts=restarts, seed=child_seed(seed, "discrete-fit", idx))
        rn = empirical_risk_general(D, fitted.partition, fitted.weights)
        return DiscreteGapRow(n=n, rep=rep, gap=abs(rn - risk_star))

    rows = parallel_map(run, tasks, threads)
    medians = {n: float(np.median([r.gap for r in rows if r.n == n])) for n in n_grid}
    return DiscreteGapResult(rows=rows, medians=medians, risk_star=float(risk_star))
