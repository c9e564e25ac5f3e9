"""Seeded tuning campaigns, blindness tests and simulation-vs-theory checks."""

from __future__ import annotations

import math
import re
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .configurator import (DEFAULT_PENALTY, Metric, ParameterSpace, blind_walk_oracle, param_rls)
from .ea import InitScheme, run_ea
from .problems import Kind, ProblemInstance, instance_from_descriptor
from .recurrence import LO_BLIND_COEFFICIENT, iterate_recurrence, ridge_blindness_threshold
from .seeding import derive_rng, derive_seed
from .stats import StatReport, chi_square_gof, mean_ci

# top-level spawn keys separating independent experiment families
ORACLE_STREAM = 1_000_001
VALIDATE_STREAM = 1_000_002

_KAPPA = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(?:\*\s*n\s*(\^\s*2|\*\*\s*2)?)?\s*$")


def parse_kappa(expr, n: int) -> int:
    """Evaluate a cutoff expression: an integer, ``c*n`` or ``c*n^2``."""
    if isinstance(expr, int):
        return expr
    text = str(expr)
    m = _KAPPA.match(text)
    if not m:
        raise ValueError(f"cannot parse cutoff expression {expr!r}; use c, c*n or c*n^2")
    coeff = Fraction(m.group(1))
    if "n" not in text:
        power = 0
    else:
        power = 2 if m.group(2) else 1
    return int(round(coeff * n ** power))


@dataclass(frozen=True)
class CampaignConfig:
    space: ParameterSpace
    metric: Metric
    instance: ProblemInstance
    init: InitScheme
    kappa_expr: str
    r: int = 1
    p: float = DEFAULT_PENALTY
    T: int = 100
    n_campaigns: int = 1
    master_seed: int = 0
    engine: str = "fast"

    @property
    def kappa(self) -> int:
        return parse_kappa(self.kappa_expr, self.instance.n)

    @classmethod
    def from_dict(cls, data: dict, master_seed: int = 0) -> "CampaignConfig":
        instance = instance_from_descriptor(data["instance"])
        init = data.get("init")
        return cls(
            space=ParameterSpace(int(data["space"]["d"]), int(data["space"]["phi"])),
            metric=Metric.parse(data.get("metric", "F")),
            instance=instance,
            init=InitScheme.default_for(instance.kind) if init is None else InitScheme.parse(init),
            kappa_expr=str(data["kappa_expr"]),
            r=int(data.get("r", 1)),
            p=float(data.get("p", DEFAULT_PENALTY)),
            T=int(data.get("T", 100)),
            n_campaigns=int(data.get("n_campaigns", 1)),
            master_seed=int(master_seed),
            engine=str(data.get("engine", "fast")),
        )


@dataclass(frozen=True)
class CampaignResult:
    campaign_id: int
    initial_z: int
    final_z: int
    path: tuple[int, ...]
    comparisons: int
    evaluations: int
    steps: tuple = ()

    def first_reached(self, z: int) -> int | None:
        for i, zi in enumerate(self.path):
            if zi == z:
                return i
        return None


def run_campaign(cfg: CampaignConfig, campaign_id: int) -> CampaignResult:
    trace = param_rls(cfg.space, cfg.metric, cfg.instance, cfg.init, cfg.kappa, cfg.r, cfg.p, cfg.T,
                      cfg.master_seed, campaign_id, engine=cfg.engine)
    steps = tuple(
        (i, s.proposal.chi, s.accepted, s.active.chi,
         *((s.outcome.wins_a, s.outcome.wins_b, s.outcome.draws, s.outcome.winner.value)
           if s.outcome is not None else (0, 0, 0, "out-of-bounds")))
        for i, s in enumerate(trace.steps)
    )
    return CampaignResult(campaign_id, trace.initial.z, trace.final.z,
                          tuple(c.z for c in trace.path), trace.comparisons_used, trace.budget, steps)


def _campaign_job(args):
    return run_campaign(*args)


def run_campaigns(cfg: CampaignConfig, workers: int = 1) -> list[CampaignResult]:
    """All campaigns of ``cfg``; results are ordered by campaign id whatever the worker count."""
    jobs = [(cfg, cid) for cid in range(cfg.n_campaigns)]
    if workers <= 1:
        return [_campaign_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_campaign_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def final_histogram(cfg: CampaignConfig, results) -> np.ndarray:
    return np.bincount([r.final_z - 1 for r in results], minlength=cfg.space.size)


def opt_time_blind_threshold(instance: ProblemInstance, epsilon: float = 0.0) -> float:
    """Cutoff coefficient of n^2 below which optimisation-time tuners are blind."""
    if instance.kind is Kind.RIDGE:
        return ridge_blindness_threshold(epsilon) if epsilon > 0 else math.e
    return LO_BLIND_COEFFICIENT


def blindness_test(cfg: CampaignConfig, oracle_samples: int = 100_000, alpha: float = 0.01,
                   expect_blind: bool = True, workers: int = 1) -> StatReport:
    """Compare the final-parameter histogram with the coin-flip walk.

    With ``expect_blind`` the check passes when the chi-square test does not
    reject at ``alpha``; otherwise it passes when it does.
    """
    n = cfg.instance.n
    threshold = opt_time_blind_threshold(cfg.instance)
    notes = {}
    if expect_blind and cfg.kappa > threshold * n * n:
        msg = f"kappa={cfg.kappa} exceeds {threshold:.6f}*n^2; blindness is not expected"
        warnings.warn(msg)
        notes["warning"] = msg
    results = run_campaigns(cfg, workers)
    counts = final_histogram(cfg, results)
    oracle = blind_walk_oracle(cfg.space, cfg.T, oracle_samples, derive_rng(cfg.master_seed, ORACLE_STREAM))
    stat, p_value, dof = chi_square_gof(counts, oracle)
    passed = p_value > alpha if expect_blind else p_value < alpha
    rel = "p > " if expect_blind else "p < "
    return StatReport(
        metric=f"blindness[{cfg.instance.kind.value},n={n},kappa={cfg.kappa_expr},metric={cfg.metric.value}]",
        sample_size=len(results), estimate=p_value, ci_low=p_value, ci_high=p_value,
        passed=passed, tolerance=rel + f"{alpha:g}",
        details={"chi2": stat, "dof": dof, "counts": counts.tolist(), "oracle": oracle.tolist(), **notes},
    )


def optimisation_times(instance, chi, runs: int, master_seed: int, tag: int, kappa: int | None = None):
    kappa = kappa if kappa is not None else 10**12
    out = []
    for run in range(runs):
        rec = run_ea(instance, chi, None, kappa, derive_seed(master_seed, VALIDATE_STREAM, tag, run))
        out.append(rec.optimum_hit_time)
    return np.array(out, dtype=float)


def _tag(kind: Kind, chi: float, n: int) -> int:
    return (0 if kind is Kind.RIDGE else 1) * 10**9 + int(round(chi * 1000)) * 10**5 + n


def runtime_check(kind, n: int, chi: float, runs: int, target: float, rel_tol: float,
                  compare=(), master_seed: int = 0) -> list[StatReport]:
    """Mean optimisation time / n^2 within ``rel_tol`` of ``target`` and separated
    (non-overlapping 95% intervals, smaller mean) from every chi in ``compare``."""
    kind = Kind.parse(kind)
    instance = ProblemInstance.canonical(kind, n)
    times = optimisation_times(instance, chi, runs, master_seed, _tag(kind, chi, n)) / n**2
    m, lo, hi = mean_ci(times)
    reports = [StatReport(
        metric=f"{kind.value}_mean_opt_time/n^2[chi={chi:g},n={n}]", sample_size=runs,
        estimate=m, ci_low=lo, ci_high=hi,
        passed=abs(m - target) <= rel_tol * target,
        tolerance=f"within {rel_tol:.0%} of {target:.6g}",
    )]
    for other in compare:
        t2 = optimisation_times(instance, other, runs, master_seed, _tag(kind, other, n)) / n**2
        m2, lo2, hi2 = mean_ci(t2)
        reports.append(StatReport(
            metric=f"{kind.value}_mean_opt_time/n^2[chi={chi:g}]<[chi={other:g}]", sample_size=runs,
            estimate=m2 - m, ci_low=lo2 - hi, ci_high=hi2 - lo,
            passed=hi < lo2,
            tolerance="95% intervals separated with the first mean smaller",
            details={"mean_a": m, "ci_a": [lo, hi], "mean_b": m2, "ci_b": [lo2, hi2]},
        ))
    return reports


def bracketing_check(n: int, chi: float, runs: int, psi: float, margin: float, min_fraction: float,
                     master_seed: int = 0, rows: list | None = None) -> StatReport:
    """Fraction of period-end checkpoints whose fitness/n lies in
    [c_l(i) - margin, c_u(i+1) + margin] before the upper bound reaches 1.

    If ``rows`` is given, (seed, t, fitness) is appended for every checkpoint.
    """
    state = iterate_recurrence(chi, psi, int(50 * psi))
    below = np.flatnonzero(state.c_upper >= 1.0)
    last = int(below[0]) - 2 if below.size else state.periods - 1
    period = n * n / psi
    periods = np.arange(0, last + 1)
    checkpoints = np.round(periods * period).astype(np.int64)
    lo = state.c_lower[periods] - margin
    hi = state.c_upper[periods + 1] + margin
    instance = ProblemInstance.canonical(Kind.LEADING_ONES, n)
    inside = 0
    total = 0
    for run in range(runs):
        seed = derive_seed(master_seed, VALIDATE_STREAM, _tag(Kind.LEADING_ONES, chi, n) + 7, run)
        rec = run_ea(instance, chi, None, int(checkpoints[-1]), seed, checkpoints=checkpoints)
        if rows is not None:
            rows.extend(zip([seed] * len(checkpoints), checkpoints.tolist(), rec.trajectory.tolist()))
        frac = rec.trajectory / n
        inside += int(np.count_nonzero((frac >= lo) & (frac <= hi)))
        total += len(frac)
    share = inside / total
    return StatReport(
        metric=f"bracketing[chi={chi:g},n={n},psi={psi:g}]", sample_size=total,
        estimate=share, ci_low=share, ci_high=share, passed=share >= min_fraction,
        tolerance=f">= {min_fraction:.0%} inside with margin {margin:g}",
        details={"checkpoints_per_run": len(checkpoints), "last_period": last},
    )


def comparisons_to_reach(results, z: int, cap: int) -> np.ndarray:
    """Comparisons until the active parameter first equals grid point ``z``; ``cap`` if never."""
    out = []
    for res in results:
        hit = res.first_reached(z)
        out.append(cap if hit is None else hit)
    return np.array(out, dtype=float)
