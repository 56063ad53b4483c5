"""Batch experiment driver.

Usage: skmlab <subcommand> --config <path> [--seed <u64>] [--out <dir>]
[--threads <n>].  The SKMLAB_OUT environment variable overrides --out.

Configs are flat JSON files with sections {model, algorithm, experiment,
output}.  Every subcommand writes a plot-ready CSV table plus a JSON summary
embedding the fully resolved config and seed, and is byte-reproducible for a
fixed (config, seed) at any thread count.

Exit codes: 0 ok, 2 config error, 3 data error, 4 check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from skmlab.core import Dataset, WeightVector
from skmlab.euclid import check_equivalence, fit
from skmlab.general import fit_general, voronoi_partition_family, squared_diff_tensor
from skmlab.io import (
    CheckFailure,
    ConfigError,
    DataError,
    read_dataset_csv,
    read_json,
    read_tensor_csv,
    write_csv,
    write_json,
)
from skmlab.models import GaussMixModel, TwoBallModel, draw, population_mean, reference_theta
from skmlab.partitions import stirling2
from skmlab.risk_lab.audits import peter_paul_check, reciprocal_bound_check, set_peter_paul_check
from skmlab.risk_lab.bounds import rc_bound_euclid, risk_gap_bound_euclid, risk_gap_bound_general
from skmlab.risk_lab.estimators import hoeffding_coverage, rc_mc_euclid, rc_mc_feature_pairs, rc_mc_partition
from skmlab.risk_lab.experiments import (
    center_drift_check,
    continuity_probe,
    risk_gap_experiment,
    verify_stationarity_two_ball,
)
from skmlab.rng import stream
from skmlab.weights import random_feasible_w
from skmlab.core import Partition

_REQUIRED = object()


class Config:
    def __init__(self, raw: dict, path: str):
        if not isinstance(raw, dict):
            raise ConfigError(f"top-level config must be a JSON object: {path}")
        self.raw = raw
        self.path = path

    def get(self, section: str, key: str, default=_REQUIRED, cast=None):
        sec = self.raw.get(section, {})
        if not isinstance(sec, dict):
            raise ConfigError(f"section {section!r} must be an object in {self.path}")
        if key not in sec:
            if default is _REQUIRED:
                raise ConfigError(f"missing config key {section}.{key} in {self.path}")
            return default
        value = sec[key]
        if cast is not None and value is not None:
            try:
                value = cast(value)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"bad value for {section}.{key} in {self.path}: {e}") from e
        return value


def parse_model(cfg: Config):
    kind = cfg.get("model", "kind", cast=str)
    try:
        if kind == "two_ball":
            return TwoBallModel(
                p=cfg.get("model", "p", cast=int),
                r=cfg.get("model", "r", cast=int),
                radius=cfg.get("model", "radius", default=None, cast=float),
            )
        if kind == "gauss_mix":
            return GaussMixModel(
                p=cfg.get("model", "p", cast=int),
                r=cfg.get("model", "r", cast=int),
                delta=cfg.get("model", "delta", cast=float),
                sigma=cfg.get("model", "sigma", cast=float),
            )
    except ValueError as e:
        raise ConfigError(f"invalid model parameters: {e}") from e
    raise ConfigError(f"unknown model.kind {kind!r} (expected two_ball or gauss_mix)")


def model_dict(model) -> dict:
    if isinstance(model, TwoBallModel):
        return {"kind": "two_ball", "p": model.p, "r": model.r, "radius": model.radius}
    return {"kind": "gauss_mix", "p": model.p, "r": model.r, "delta": model.delta, "sigma": model.sigma}


def _resolve_seed(cfg: Config, args) -> int:
    if args.seed is not None:
        return args.seed
    return cfg.get("experiment", "seed", default=0, cast=int)


def _outdir(args) -> Path:
    out = os.environ.get("SKMLAB_OUT") or args.out or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _prefix(cfg: Config, default: str) -> str:
    return cfg.get("output", "prefix", default=default, cast=str)


# ---------------------------------------------------------------------------
# subcommands


def cmd_fit(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    dataset_csv = cfg.get("experiment", "dataset_csv", cast=str)
    bound_M = cfg.get("experiment", "bound_M", default=None, cast=float)
    K = cfg.get("algorithm", "K", cast=int)
    s = cfg.get("algorithm", "s", cast=float)
    n_starts = cfg.get("algorithm", "n_starts", default=10, cast=int)
    max_iter = cfg.get("algorithm", "max_iter", default=50, cast=int)
    tol = cfg.get("algorithm", "tol", default=1e-8, cast=float)

    data = read_dataset_csv(dataset_csv, bound_M=bound_M)
    if K > data.n:
        raise ConfigError("K exceeds sample size")
    try:
        result = fit(data, K, s, n_starts=n_starts, max_outer=max_iter, tol=tol, seed=seed)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    prefix = _prefix(cfg, "fit")
    outdir = _outdir(args)
    resolved = {
        "command": "fit",
        "algorithm": {"K": K, "s": s, "n_starts": n_starts, "max_iter": max_iter, "tol": tol},
        "experiment": {"dataset_csv": dataset_csv, "bound_M": bound_M, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_json(
        outdir / f"{prefix}_result.json",
        {
            "config": resolved,
            "objective": result.objective,
            "weights": result.weights.w,
            "centers": result.centers.centers,
            "labels": (result.partition.labels + 1),
            "trace": result.trace,
            "n_outer": result.n_outer,
            "start_index": result.start_index,
            "degenerate": result.degenerate,
        },
    )
    write_csv(
        outdir / f"{prefix}_trace.csv",
        ["iteration", "objective"],
        [(i + 1, v) for i, v in enumerate(result.trace)],
    )
    return 0


def cmd_fit_general(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    tensor_csv = cfg.get("experiment", "tensor_csv", cast=str)
    bound_M = cfg.get("experiment", "bound_M", default=None, cast=float)
    K = cfg.get("algorithm", "K", cast=int)
    s = cfg.get("algorithm", "s", cast=float)
    n_starts = cfg.get("algorithm", "n_starts", default=20, cast=int)
    max_iter = cfg.get("algorithm", "max_iter", default=50, cast=int)

    D = read_tensor_csv(tensor_csv, bound_M=bound_M)
    if K > D.n:
        raise ConfigError("K exceeds sample size")
    result = fit_general(D, K, s, n_starts=n_starts, max_iter=max_iter, seed=seed)

    prefix = _prefix(cfg, "fit_general")
    outdir = _outdir(args)
    resolved = {
        "command": "fit_general",
        "algorithm": {"K": K, "s": s, "n_starts": n_starts, "max_iter": max_iter},
        "experiment": {"tensor_csv": tensor_csv, "bound_M": bound_M, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_json(
        outdir / f"{prefix}_result.json",
        {
            "config": resolved,
            "objective": result.objective,
            "weights": result.weights.w,
            "labels": (result.partition.labels + 1),
            "trace": result.trace,
            "start_index": result.start_index,
        },
    )
    write_csv(
        outdir / f"{prefix}_trace.csv",
        ["iteration", "objective"],
        [(i + 1, v) for i, v in enumerate(result.trace)],
    )
    return 0


def cmd_equiv_check(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    identity_instances = cfg.get("experiment", "identity_instances", default=100, cast=int)
    n_max = cfg.get("experiment", "identity_n_max", default=50, cast=int)
    p_max = cfg.get("experiment", "identity_p_max", default=10, cast=int)
    K_max = cfg.get("experiment", "K_max", default=4, cast=int)
    exhaustive_instances = cfg.get("experiment", "exhaustive_instances", default=20, cast=int)
    exhaustive_n_max = cfg.get("experiment", "exhaustive_n_max", default=10, cast=int)
    rel_tol = cfg.get("experiment", "rel_tol", default=1e-9, cast=float)

    if stirling2(exhaustive_n_max, min(K_max, exhaustive_n_max)) > 10**6:
        raise ConfigError("exhaustive request too large (partition count above 1e6)")

    rows = []
    failures = 0

    def random_instance(rng, n_hi: int):
        K = int(rng.integers(1, K_max + 1))
        n = int(rng.integers(max(K, 2), n_hi + 1))
        p = int(rng.integers(1, p_max + 1))
        X = Dataset(values=rng.uniform(-1.0, 1.0, size=(n, p)))
        perm = rng.permutation(n)
        labels = np.empty(n, dtype=np.int64)
        labels[perm[:K]] = np.arange(K)
        labels[perm[K:]] = rng.integers(0, K, size=n - K)
        s = float(rng.uniform(0.8, 2.0))
        w = random_feasible_w(p, s, rng)
        return X, Partition(labels=labels, K=K), w

    for i in range(identity_instances):
        rng = stream(seed, "equiv-identity", i)
        X, part, w = random_instance(rng, n_max)
        rep = check_equivalence(X, part, w, exhaustive=False)
        ok = rep.identity_rel_error <= rel_tol
        failures += 0 if ok else 1
        rows.append(("identity", i, X.n, X.p, part.K, rep.identity_rel_error, "", "", ok))

    for i in range(exhaustive_instances):
        rng = stream(seed, "equiv-exhaustive", i)
        X, part, w = random_instance(rng, exhaustive_n_max)
        rep = check_equivalence(X, part, w, exhaustive=True)
        ratio_ok = rep.both_optima_zero or (rep.optimum_ratio is not None and abs(rep.optimum_ratio - 2.0) <= rel_tol)
        ok = rep.identity_rel_error <= rel_tol and rep.argmax_agree and ratio_ok
        failures += 0 if ok else 1
        rows.append(
            (
                "exhaustive",
                i,
                X.n,
                X.p,
                part.K,
                rep.identity_rel_error,
                rep.argmax_agree,
                "" if rep.optimum_ratio is None else rep.optimum_ratio,
                ok,
            )
        )

    prefix = _prefix(cfg, "equiv_check")
    outdir = _outdir(args)
    resolved = {
        "command": "equiv_check",
        "experiment": {
            "identity_instances": identity_instances,
            "identity_n_max": n_max,
            "identity_p_max": p_max,
            "K_max": K_max,
            "exhaustive_instances": exhaustive_instances,
            "exhaustive_n_max": exhaustive_n_max,
            "rel_tol": rel_tol,
            "seed": seed,
        },
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    max_rel = max(r[5] for r in rows)
    write_csv(
        outdir / f"{prefix}_instances.csv",
        ["kind", "index", "n", "p", "K", "identity_rel_error", "argmax_agree", "optimum_ratio", "passed"],
        [[str(r[0]), r[1], r[2], r[3], r[4], r[5], str(r[6]), r[7] if r[7] != "" else "", str(r[8])] for r in rows],
    )
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "instances": len(rows),
            "failures": failures,
            "max_identity_rel_error": max_rel,
            "passed": failures == 0,
        },
    )
    if failures:
        raise CheckFailure(f"{failures} equivalence instances failed")
    return 0


def cmd_risk_gap(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    model = parse_model(cfg)
    K = cfg.get("algorithm", "K", cast=int)
    s = cfg.get("algorithm", "s", cast=float)
    fit_starts = cfg.get("algorithm", "n_starts", default=10, cast=int)
    n_grid = cfg.get("experiment", "n_grid", default=[50, 200, 800, 3200])
    reps = cfg.get("experiment", "reps", default=20, cast=int)
    gap_draws = cfg.get("experiment", "gap_draws", default=200_000, cast=int)
    t = cfg.get("experiment", "t", default=0.05, cast=float)
    ref_opts = {
        "n_fit": cfg.get("experiment", "ref_n_fit", default=10**6, cast=int),
        "n_starts": cfg.get("experiment", "ref_starts", default=50, cast=int),
        "refine_draws": cfg.get("experiment", "ref_refine_draws", default=10**7, cast=int),
    }

    result = risk_gap_experiment(
        model,
        K,
        s,
        n_grid,
        reps,
        seed,
        fit_starts=fit_starts,
        gap_draws=gap_draws,
        t=t,
        threads=args.threads,
        reference_opts=ref_opts,
    )

    prefix = _prefix(cfg, "risk_gap")
    outdir = _outdir(args)
    resolved = {
        "command": "risk_gap",
        "model": model_dict(model),
        "algorithm": {"K": K, "s": s, "n_starts": fit_starts},
        "experiment": {
            "n_grid": [int(n) for n in n_grid],
            "reps": reps,
            "gap_draws": gap_draws,
            "t": t,
            "seed": seed,
            **{f"ref_{k}": v for k, v in ref_opts.items()},
        },
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_csv(
        outdir / f"{prefix}_table.csv",
        ["n", "rep", "gap", "std_error", "bound", "within_bound"],
        [(r.n, r.rep, r.gap, r.std_error, r.bound, str(r.within_bound)) for r in result.rows],
    )
    medians = [sm.median for sm in result.summary]
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "reference": {
                "risk": result.reference.risk.value,
                "risk_std_error": result.reference.risk.std_error,
                "fit_objective": result.reference.fit_objective,
                "weights": result.reference.theta.weights.w,
                "centers": result.reference.theta.structure.centers,
            },
            "summary": [
                {
                    "n": sm.n,
                    "median_gap": sm.median,
                    "q25": sm.q25,
                    "q75": sm.q75,
                    "frac_within_bound": sm.frac_within_bound,
                }
                for sm in result.summary
            ],
            "median_decreasing": all(b < a for a, b in zip(medians, medians[1:])),
        },
    )
    return 0


def cmd_rademacher(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    model = parse_model(cfg)
    K = cfg.get("algorithm", "K", cast=int)
    s = cfg.get("algorithm", "s", cast=float)
    n = cfg.get("experiment", "n", default=100, cast=int)
    rc_draws = cfg.get("experiment", "rc_draws", default=1000, cast=int)
    family_candidates = cfg.get("experiment", "family_candidates", default=50, cast=int)

    M = getattr(model, "bound", None)
    if M is None:
        raise ConfigError("Rademacher experiment needs a model with bounded support")
    data = Dataset(values=draw(model, n, stream(seed, "rademacher-data")), bound_M=M)
    mu = population_mean(model)

    est = rc_mc_euclid(data, mu, s, M, K, rc_draws, seed)
    bound = rc_bound_euclid(s, M, K, n)
    family = voronoi_partition_family(data, K, family_candidates, seed)
    part_est = rc_mc_partition(data, family, rc_draws, seed)
    D = squared_diff_tensor(data)
    pair_ests = [rc_mc_feature_pairs(D, j, family, rc_draws, seed) for j in range(data.p)]
    pair_max = max(e.value for e in pair_ests)

    rows = [("rc_euclid_mc", est.value, est.std_error, bound)]
    rows.append(("rc_partition_mc", part_est.value, part_est.std_error, ""))
    for j, e in enumerate(pair_ests):
        rows.append((f"rc_pairs_f{j + 1}", e.value, e.std_error, ""))
    rows.append(("rc_pairs_max", pair_max, "", ""))

    prefix = _prefix(cfg, "rademacher")
    outdir = _outdir(args)
    resolved = {
        "command": "rademacher",
        "model": model_dict(model),
        "algorithm": {"K": K, "s": s},
        "experiment": {"n": n, "rc_draws": rc_draws, "family_candidates": family_candidates, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    within = est.value <= bound + 3.0 * est.std_error
    write_csv(outdir / f"{prefix}_table.csv", ["estimator", "value", "std_error", "closed_form_bound"], rows)
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "rc_euclid": {"value": est.value, "std_error": est.std_error, "bound": bound, "within_bound": within},
            "rc_partition": {"value": part_est.value, "std_error": part_est.std_error},
            "rc_pairs_max": pair_max,
            "family_size": len(family),
            "passed": within,
        },
    )
    if not within:
        raise CheckFailure("Rademacher estimate exceeds its closed-form bound")
    return 0


def cmd_bounds(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    s = cfg.get("experiment", "s", cast=float)
    M = cfg.get("experiment", "M", cast=float)
    K = cfg.get("experiment", "K", cast=int)
    n = cfg.get("experiment", "n", cast=int)
    p = cfg.get("experiment", "p", cast=int)
    t = cfg.get("experiment", "t", default=0.05, cast=float)

    try:
        euclid_report = risk_gap_bound_euclid(s, M, K, n, p, t)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    rows = [("euclid_total", euclid_report.bound_total)]
    rows += [(f"euclid_{name}", value) for name, value in euclid_report.components.items()]
    summary = {
        "euclid": {
            "total": euclid_report.bound_total,
            "components": euclid_report.components,
            "t": t,
            "confidence": euclid_report.confidence_label,
        }
    }

    delta = cfg.get("experiment", "delta", default=None, cast=float)
    if delta is not None:
        RC = cfg.get("experiment", "RC", default=0.0, cast=float)
        RCj = cfg.get("experiment", "RCj_max", default=0.0, cast=float)
        try:
            general_report = risk_gap_bound_general(s, M, K, delta, t, n, RC, RCj)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        rows.append(("general_total", general_report.bound_total))
        rows += [(f"general_{name}", value) for name, value in general_report.components.items()]
        summary["general"] = {
            "total": general_report.bound_total,
            "components": general_report.components,
            "feasible": general_report.feasible,
            "t": t,
            "confidence": general_report.confidence_label,
        }

    prefix = _prefix(cfg, "bounds")
    outdir = _outdir(args)
    resolved = {
        "command": "bounds",
        "experiment": {"s": s, "M": M, "K": K, "n": n, "p": p, "t": t, "delta": delta, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_csv(outdir / f"{prefix}_table.csv", ["component", "value"], rows)
    write_json(outdir / f"{prefix}_summary.json", {"config": resolved, **summary})
    return 0


def cmd_concentration(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    model = parse_model(cfg)
    s = cfg.get("algorithm", "s", cast=float)
    n = cfg.get("experiment", "n", default=100, cast=int)
    t = cfg.get("experiment", "t", default=0.05, cast=float)
    reps = cfg.get("experiment", "reps", default=1000, cast=int)
    audit_cases = cfg.get("experiment", "audit_cases", default=10**5, cast=int)
    eps_grid = cfg.get("experiment", "eps_grid", default=[0.1, 1.0, 10.0])
    set_cases = cfg.get("experiment", "set_audit_cases", default=audit_cases, cast=int)

    try:
        w = reference_theta(model, s).weights if isinstance(model, TwoBallModel) else None
        if w is None:
            raise ConfigError("concentration experiment needs the bounded two-ball model")
        coverage = hoeffding_coverage(model, w, n, t, reps, seed)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    pp = peter_paul_check(audit_cases, eps_grid, seed)
    spp = set_peter_paul_check(set_cases, eps_grid, seed)
    rec = reciprocal_bound_check(audit_cases, seed)

    rows = [
        ("hoeffding_coverage", reps, coverage.coverage, coverage.target, str(coverage.passed)),
        ("peter_paul", audit_cases * len(list(eps_grid)), pp, 0, str(pp == 0)),
        ("set_peter_paul", set_cases * len(list(eps_grid)), spp, 0, str(spp == 0)),
        ("reciprocal_bound", audit_cases, rec, 0, str(rec == 0)),
    ]
    passed = coverage.passed and pp == 0 and spp == 0 and rec == 0

    prefix = _prefix(cfg, "concentration")
    outdir = _outdir(args)
    resolved = {
        "command": "concentration",
        "model": model_dict(model),
        "algorithm": {"s": s},
        "experiment": {
            "n": n,
            "t": t,
            "reps": reps,
            "audit_cases": audit_cases,
            "set_audit_cases": set_cases,
            "eps_grid": list(eps_grid),
            "seed": seed,
        },
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_csv(outdir / f"{prefix}_table.csv", ["check", "cases", "metric", "threshold", "passed"], rows)
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "hoeffding": {
                "coverage": coverage.coverage,
                "target": coverage.target,
                "bound": coverage.bound,
                "allowance": coverage.allowance,
            },
            "violations": {"peter_paul": pp, "set_peter_paul": spp, "reciprocal_bound": rec},
            "passed": passed,
        },
    )
    if not passed:
        raise CheckFailure("a concentration check failed")
    return 0


def cmd_stationarity(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    model = parse_model(cfg)
    prefix = _prefix(cfg, "stationarity")
    outdir = _outdir(args)

    if isinstance(model, TwoBallModel):
        s = cfg.get("algorithm", "s", cast=float)
        n_perturb = cfg.get("experiment", "n_perturb", default=200, cast=int)
        mc_draws = cfg.get("experiment", "mc_draws", default=10**6, cast=int)
        try:
            report = verify_stationarity_two_ball(model, s, n_perturb, mc_draws, seed, threads=args.threads)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        rows = [
            ("center_optimality", report.center_check.worst_diff, report.center_check.worst_se, str(report.center_check.passed)),
            ("weight_optimality", report.weight_check.worst_diff, report.weight_check.worst_se, str(report.weight_check.passed)),
        ]
        for k, (d, se) in enumerate(zip(report.fixed_point.displacements, report.fixed_point.std_errors)):
            rows.append((f"lloyd_fixed_point_center{k + 1}", d, se, str(d <= 3.0 * se)))
        resolved = {
            "command": "stationarity",
            "model": model_dict(model),
            "algorithm": {"s": s},
            "experiment": {"n_perturb": n_perturb, "mc_draws": mc_draws, "seed": seed},
            "output": {"prefix": prefix},
            "threads": args.threads,
        }
        write_csv(outdir / f"{prefix}_table.csv", ["check", "statistic", "std_error", "passed"], rows)
        write_json(
            outdir / f"{prefix}_summary.json",
            {
                "config": resolved,
                "center_check": {
                    "worst_diff": report.center_check.worst_diff,
                    "worst_se": report.center_check.worst_se,
                    "passed": report.center_check.passed,
                },
                "weight_check": {
                    "worst_diff": report.weight_check.worst_diff,
                    "worst_se": report.weight_check.worst_se,
                    "passed": report.weight_check.passed,
                },
                "fixed_point": {
                    "displacements": report.fixed_point.displacements,
                    "std_errors": report.fixed_point.std_errors,
                    "passed": report.fixed_point.passed,
                },
                "passed": report.passed,
            },
        )
        if not report.passed:
            raise CheckFailure("stationarity verification failed")
        return 0

    n_mc = cfg.get("experiment", "mc_draws", default=10**6, cast=int)
    report = center_drift_check(model, n_mc, seed)
    rows = [
        (f"center{k + 1}_drift", d, se, str(d > 3.0 * se))
        for k, (d, se) in enumerate(zip(report.displacements, report.std_errors))
    ]
    resolved = {
        "command": "stationarity",
        "model": model_dict(model),
        "experiment": {"mc_draws": n_mc, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_csv(outdir / f"{prefix}_table.csv", ["check", "displacement", "std_error", "moved"], rows)
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "displacements": report.displacements,
            "std_errors": report.std_errors,
            "counts": report.counts,
            "all_moved": report.all_moved,
            "any_moved": report.any_moved,
        },
    )
    if not report.all_moved:
        raise CheckFailure("expected the overlapping mixture to move the centers")
    return 0


def cmd_continuity(cfg: Config, args) -> int:
    seed = _resolve_seed(cfg, args)
    model = parse_model(cfg)
    s = cfg.get("algorithm", "s", cast=float)
    radii = cfg.get("experiment", "radii", default=[0.5, 0.25, 0.125, 0.0625])
    n_probe = cfg.get("experiment", "n_probe", default=60, cast=int)
    n_draws = cfg.get("experiment", "n_draws", default=200_000, cast=int)

    if not isinstance(model, TwoBallModel):
        raise ConfigError("continuity probe uses the two-ball reference point")
    try:
        theta0 = reference_theta(model, s)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    rows = continuity_probe(model, theta0, radii, n_probe, seed, n_draws=n_draws, threads=args.threads)

    moduli = [r.modulus for r in rows]
    ses = [r.std_error for r in rows]
    ordered = all(moduli[i + 1] <= moduli[i] + 3.0 * (ses[i] + ses[i + 1]) for i in range(len(rows) - 1))

    prefix = _prefix(cfg, "continuity")
    outdir = _outdir(args)
    resolved = {
        "command": "continuity",
        "model": model_dict(model),
        "algorithm": {"s": s},
        "experiment": {"radii": [float(r) for r in radii], "n_probe": n_probe, "n_draws": n_draws, "seed": seed},
        "output": {"prefix": prefix},
        "threads": args.threads,
    }
    write_csv(
        outdir / f"{prefix}_table.csv",
        ["radius", "modulus", "std_error"],
        [(r.radius, r.modulus, r.std_error) for r in rows],
    )
    write_json(
        outdir / f"{prefix}_summary.json",
        {
            "config": resolved,
            "table": [{"radius": r.radius, "modulus": r.modulus, "std_error": r.std_error} for r in rows],
            "nonincreasing_within_noise": ordered,
            "shrink_ratio": (moduli[-1] / moduli[0]) if moduli and moduli[0] > 0 else None,
        },
    )
    return 0


COMMANDS = {
    "fit": cmd_fit,
    "fit-general": cmd_fit_general,
    "equiv-check": cmd_equiv_check,
    "risk-gap": cmd_risk_gap,
    "rademacher": cmd_rademacher,
    "bounds": cmd_bounds,
    "concentration": cmd_concentration,
    "stationarity": cmd_stationarity,
    "continuity": cmd_continuity,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skmlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--threads", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(read_json(args.config), args.config)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except DataError as e:
        print(f"data error: {e}", file=sys.stderr)
        return 3
    except CheckFailure as e:
        print(f"check failure: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
