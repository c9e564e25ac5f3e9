"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
Experiment settings and tolerances come from the files in ``configs/``.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from paramlab.config import load_config
from paramlab.configurator import eval_f, eval_t
from paramlab.ea import Configuration, sbm_mutate
from paramlab.experiments import (CampaignConfig, blindness_test, bracketing_check, comparisons_to_reach,
                                  final_histogram, run_campaigns, runtime_check)
from paramlab.problems import Kind, ProblemInstance, evaluate_many
from paramlab.recurrence import (LO_TERMINAL_PERIOD, TABLE_GRID, certify_finishes_first, certify_landscape,
                                 iterate_recurrence)
from paramlab.reference_tables import TABLE1, TABLE2
from paramlab.seeding import derive_seed

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
RESULTS: dict[int, str] = {}


def record(number: int, title: str, passed: bool, detail: str) -> bool:
    RESULTS[number] = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2} {title}: {detail}"
    print(RESULTS[number])
    return passed


def config(command, name):
    return load_config(command, CONFIGS / f"{name}.toml")


@pytest.fixture(scope="module")
def landscape():
    t0 = time.perf_counter()
    rc = config("landscape", "landscape")["recurrence"]
    report = certify_landscape(tuple(rc["grid"]), rc["psi"], rc["periods"])
    return report, time.perf_counter() - t0


@pytest.fixture(scope="module")
def certificate():
    rc = config("landscape", "landscape")["recurrence"]
    return certify_finishes_first(tuple(rc["grid"]), rc["psi"], rc["start_period"], rc["epsilon"], strict=False)


def test_c01_table1_reproduction(landscape):
    report, seconds = landscape
    ranges = report.kappa_ranges()
    errs = [max(abs(ranges[c][0] - lo), abs(ranges[c][1] - hi)) if c in ranges else math.inf
            for c, (lo, hi) in TABLE1.items()]
    worst = max(errs)
    ok = worst <= 1e-6 + 1e-12 and seconds < 120 and len(ranges) == 15
    lo, hi = ranges.get(1.6, (math.nan, math.nan))
    assert record(1, "Table 1 reproduction", ok,
                  f"15 endpoints pairs, max |error|={worst:.1e} (tol 1e-6), chi=1.6 -> [{lo:.6f}, {hi:.6f}], "
                  f"{seconds:.1f}s (< 120s)")


def test_c02_upper_bounds_below_one():
    values = {c: iterate_recurrence(c, 1e6, LO_TERMINAL_PERIOD).c_upper[-1] for c in TABLE_GRID}
    worst = max(values, key=values.get)
    ok = all(v < 1.0 for v in values.values())
    assert record(2, "opt-time certificate", ok,
                  f"max c_u at period {LO_TERMINAL_PERIOD} is {values[worst]:.9f} (chi={worst:g}), all 30 < 1")


def test_c03_table2_certificate(certificate):
    q_ok = certificate.ok and all(r.q <= 1 for r in certificate.rows) and len(certificate.rows) == len(TABLE2)
    ratios, row_err = [], 0.0
    for (a, b), ref in TABLE2.items():
        got = certificate.lookup(a, b).scaled
        ratios.append(1.0 if ref == 0 and got < 0.5 else (max(got / ref, ref / got) if ref > 0 and got > 0
                                                            else math.inf))
        if a == 1.6:
            row_err = max(row_err, abs(got - ref))
    magnitude_ok = max(ratios) < 10
    ok = q_ok and magnitude_ok and row_err <= 0.5
    max_scaled = max(r.scaled for r in certificate.rows)
    assert record(3, "Table 2 certificate", ok,
                  f"{len(certificate.rows)} pairs, max 1e5*Q={max_scaled:.2f} (Q <= 1), worst magnitude ratio "
                  f"{max(ratios):.2f} (< 10), row a=1.6 max |dev|={row_err:.3f} (<= 0.5)")


def _runtime(kind):
    checks = [c for c in config("validate", "validate")["runtime"] if Kind.parse(c["kind"]) is kind]
    assert len(checks) == 1
    c = checks[0]
    t0 = time.perf_counter()
    reports = runtime_check(c["kind"], c["n"], c["chi"], c["runs"], c["target"], c["rel_tol"],
                            tuple(c["compare"]), master_seed=0)
    return reports, time.perf_counter() - t0


def test_c04_ridge_runtime():
    reports, seconds = _runtime(Kind.RIDGE)
    main, seps = reports[0], reports[1:]
    ok = all(r.passed for r in reports) and len(seps) == 2 and seconds < 60
    sep_text = "; ".join(f"vs chi={r.metric.split('chi=')[-1].rstrip(']')} mean {r.details['mean_b']:.3f} "
                         f"CI [{r.details['ci_b'][0]:.3f}, {r.details['ci_b'][1]:.3f}]" for r in seps)
    assert record(4, "Ridge runtime", ok,
                  f"mean T/n^2={main.estimate:.3f} CI [{main.ci_low:.3f}, {main.ci_high:.3f}] in "
                  f"[{0.9 * math.e:.3f}, {1.1 * math.e:.3f}]; {sep_text}; {seconds:.1f}s")


def test_c05_leading_ones_runtime():
    reports, _ = _runtime(Kind.LEADING_ONES)
    main = reports[0]
    ok = main.passed
    assert record(5, "LeadingOnes runtime", ok,
                  f"mean T/n^2={main.estimate:.4f} CI [{main.ci_low:.4f}, {main.ci_high:.4f}], "
                  f"target 0.772 +-10% = [{0.772 * 0.9:.4f}, {0.772 * 1.1:.4f}]")


def test_c06_trajectory_bracketing():
    c = config("validate", "validate")["bracketing"][0]
    reports = [bracketing_check(c["n"], chi, c["runs"], c["psi"], c["margin"], c["min_fraction"], 0)
               for chi in c["chis"]]
    pooled = sum(r.estimate * r.sample_size for r in reports) / sum(r.sample_size for r in reports)
    ok = all(r.passed for r in reports)
    per = ", ".join(f"chi={chi:g}: {r.estimate:.1%}" for chi, r in zip(c["chis"], reports))
    assert record(6, "trajectory bracketing", ok,
                  f"inside share {per} (pooled {pooled:.1%}); need >= {c['min_fraction']:.0%} each")


def test_c07_fitness_tuner_on_ridge():
    cfg = config("tune", "tune_ridge")
    camp = CampaignConfig.from_dict(cfg["campaign"], cfg["master_seed"])
    results = run_campaigns(camp)
    target = camp.space.nearest(cfg["checks"]["target_chi"])
    reach = comparisons_to_reach(results, target.z, camp.T)
    share = float(np.mean([r.final_z == target.z for r in results]))
    mean_ok = reach.mean() <= cfg["checks"]["max_mean_comparisons"]
    share_ok = share >= cfg["checks"]["min_final_share"]
    hist = final_histogram(camp, results).tolist()
    assert record(7, "ParamRLS-F on Ridge", mean_ok and share_ok,
                  f"mean comparisons to chi=1: {reach.mean():.2f} (<= 72: {'ok' if mean_ok else 'no'}); "
                  f"ending at chi=1: {share:.0%} (>= 90%: {'ok' if share_ok else 'no'}); final histogram {hist}")


def test_c08_cutoff_dependent_optimum():
    parts, ok = [], True
    for name in ("tune_lo_031", "tune_lo_075"):
        cfg = config("tune", name)
        camp = CampaignConfig.from_dict(cfg["campaign"], cfg["master_seed"])
        hist = final_histogram(camp, run_campaigns(camp))
        mode = (int(np.argmax(hist)) + 1) / camp.space.d
        share = hist.max() / hist.sum()
        want = cfg["checks"]["mode_chi"]
        good = math.isclose(mode, want) and share >= cfg["checks"]["min_mode_share"]
        ok &= good
        parts.append(f"kappa={camp.kappa_expr}: mode {mode:g} with {share:.0%} (want {want:g}, >= 60%)")
    assert record(8, "cutoff-dependent optimum on LO", ok, "; ".join(parts))


def test_c09_blindness():
    parts, ok = [], True
    for name in ("blind_ridge", "blind_lo", "blind_control"):
        cfg = config("blindness", name)
        camp = CampaignConfig.from_dict(cfg["campaign"], cfg["master_seed"])
        b = cfg["blindness"]
        rep = blindness_test(camp, b["oracle_samples"], b["alpha"], b["expect_blind"])
        ok &= rep.passed
        parts.append(f"{name}: p={rep.estimate:.3g} ({rep.tolerance})")
    assert record(9, "blindness", ok, "; ".join(parts))


def test_c10_property_suites():
    import itertools

    checks = {}
    xor_ok = True
    for kind in Kind:
        for n in range(1, 13):
            xs = np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.uint8)
            ref = evaluate_many(ProblemInstance.canonical(kind, n), xs)
            idx = np.arange(len(xs))
            xor_ok &= all(np.array_equal(evaluate_many(ProblemInstance(kind, n, a), xs), ref[idx ^ ia])
                          for ia, a in enumerate(xs))
    checks["xor n<=12"] = xor_ok

    rng = np.random.default_rng(2024)
    x = np.zeros(100, dtype=np.uint8)
    flips = np.array([sbm_mutate(x, 1.6, rng).sum() for _ in range(100_000)])
    checks["sbm mean"] = abs(flips.mean() - 1.6) <= 3 * math.sqrt(1.6 * (1 - 0.016) / 1e5)

    cfg = config("tune", "tune_ridge")
    camp = CampaignConfig.from_dict(dict(cfg["campaign"], n_campaigns=8, T=20), 5)
    checks["reruns/workers"] = run_campaigns(camp, 1) == run_campaigns(camp, 1) == run_campaigns(camp, 2)

    sym = True
    instance = ProblemInstance.canonical("leadingones", 16)
    for s in range(40):
        a, b = Configuration(1 + s % 6, 2), Configuration(1 + (s * 7) % 6, 2)
        seeds = [(derive_seed(s, i, 0), derive_seed(s, i, 1)) for i in range(3)]
        mirrored = [(q, p) for p, q in seeds]
        for ev in (eval_f, eval_t):
            fwd = ev(a, b, instance, None, 100 + s, 3, rng=np.random.default_rng(s), run_seeds=seeds)
            bwd = ev(b, a, instance, None, 100 + s, 3, rng=np.random.default_rng(s), run_seeds=mirrored)
            sym &= (fwd.wins_a, fwd.wins_b, fwd.draws) == (bwd.wins_b, bwd.wins_a, bwd.draws)
            sym &= fwd.winner.by_coin == bwd.winner.by_coin
            sym &= fwd.winner.by_coin or fwd.winner.mirrored() is bwd.winner
    checks["eval swap symmetry"] = sym
    ok = all(checks.values())
    assert record(10, "property suites", ok, ", ".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
