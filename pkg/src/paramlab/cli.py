"""Command-line front end: ``lab landscape|tune|blindness|validate|tables``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

import numpy as np

from . import __version__
from .config import COMMANDS, config_hash, load_config
from .experiments import (CampaignConfig, blindness_test, bracketing_check, comparisons_to_reach,
                          final_histogram, run_campaigns, runtime_check)
from .recurrence import (Q_SCALE, certify_finishes_first, certify_landscape, iterate_recurrence)
from .reference_tables import TABLE1, TABLE2
from .stats import StatReport, mean_ci

log = logging.getLogger("paramlab")


def fmt6(x: float) -> str:
    """Six decimals, rounding half to even on the shortest decimal form of ``x``."""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


class Output:
    """Writes every artefact of one command under ``root`` with a provenance header."""

    def __init__(self, root, cfg: dict):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.header = f"# paramlab {__version__} spec_sha256={config_hash(cfg)} master_seed={cfg['master_seed']}"

    def csv(self, name: str, columns, rows) -> Path:
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(self.header + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
        return path

    def reports(self, name: str, reports: list[StatReport]) -> Path:
        path = self.root / name
        payload = {"header": self.header, "reports": [r.as_dict() for r in reports]}
        path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n")
        return path


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(type(x))


def _print_reports(reports):
    for r in reports:
        print(r.line())


def _landscape_results(rc: dict):
    grid = tuple(float(c) for c in rc["grid"])
    report = certify_landscape(grid, rc["psi"], int(rc["periods"]), rc["precision"])
    cert = certify_finishes_first(grid, rc["psi"], int(rc["start_period"]), float(rc["epsilon"]), strict=False)
    return report, cert


def cmd_landscape(cfg: dict, out: Output) -> int:
    rc = cfg["recurrence"]
    grid = tuple(float(c) for c in rc["grid"])
    periods = int(rc["periods"])
    stride = max(1, int(rc["curve_stride"]))
    t0 = time.perf_counter()
    report, cert = _landscape_results(rc)
    ranges = report.kappa_ranges()
    out.csv("table1.csv", ["chi", "kappa_low_coeff", "kappa_high_coeff"],
            [[f"{chi:.1f}", fmt6(lo), fmt6(hi)] for chi, (lo, hi) in sorted(ranges.items(), reverse=True)])
    out.csv("table2.csv", ["a", "b", "scaled_Q_max", "period"],
            [[f"{r.a:.1f}", f"{r.b:.1f}", fmt6(r.scaled), r.period] for r in cert.rows])

    unfinished = []
    for chi in grid:
        state = iterate_recurrence(chi, rc["psi"], periods)
        idx = np.unique(np.append(np.arange(0, periods + 1, stride), periods))
        out.csv(f"curves/{chi:.1f}.csv", ["i", "c_lower", "c_upper"],
                zip(idx.tolist(), state.c_lower[idx].tolist(), state.c_upper[idx].tolist()))
        if not state.c_upper[periods] < 1.0:
            unfinished.append((chi, float(state.c_upper[periods])))
    log.info("landscape computed in %.1fs", time.perf_counter() - t0)

    for chi, cu in unfinished:
        print(f"opt-time certificate refused: chi={chi:g} has c_u={cu!r} >= 1 at period {periods}", file=sys.stderr)
    for f in cert.failures:
        print(f"finishes-first certificate refused: a={f.a:g} b={f.b:g} period={f.period}: {f.reason}",
              file=sys.stderr)
    print(f"table1: {len(ranges)} peaks; table2: {len(cert.rows)} pairs, optimum {cert.optimum:g}, "
          f"max scaled Q {max((r.scaled for r in cert.rows), default=float('nan')):.2f}")
    ok = not unfinished and cert.ok
    print("certificates hold" if ok else "certificate refused")
    return 0 if ok else 1


def compare_tables(report, cert, tol: dict) -> list[StatReport]:
    """Golden-table comparison: Table 1 endpoints and Table 2 magnitudes."""
    reports = []
    ranges = report.kappa_ranges()
    for chi, (ref_lo, ref_hi) in sorted(TABLE1.items()):
        got = ranges.get(chi)
        if got is None:
            reports.append(StatReport(f"table1[chi={chi:g}]", 2, float("nan"), float("nan"), float("nan"),
                                      False, "range missing"))
            continue
        err = max(abs(got[0] - ref_lo), abs(got[1] - ref_hi))
        reports.append(StatReport(
            f"table1[chi={chi:g}]", 2, err, got[0], got[1], err <= tol["endpoint_tol"] + 1e-12,
            f"endpoints within {tol['endpoint_tol']:g} of [{ref_lo:.6f}, {ref_hi:.6f}]"))
    worst = 0.0
    mismatches = []
    row_err = 0.0
    for (a, b), ref in sorted(TABLE2.items()):
        try:
            got = cert.lookup(a, b).scaled
        except KeyError:
            mismatches.append((a, b, None, ref))
            continue
        if abs(a - tol["tol_row"]) < 1e-9:
            row_err = max(row_err, abs(got - ref))
        if ref == 0.0:
            good = got < 0.05 * tol["magnitude_factor"]
            ratio = 1.0 if good else float("inf")
        else:
            ratio = max(got / ref, ref / got) if got > 0 else float("inf")
            good = ratio <= tol["magnitude_factor"]
        worst = max(worst, ratio)
        if not good:
            mismatches.append((a, b, got, ref))
    reports.append(StatReport(
        "table2_order_of_magnitude", len(TABLE2), worst, worst, worst, not mismatches,
        f"every entry within a factor {tol['magnitude_factor']:g} of the reference",
        details={"mismatches": mismatches}))
    reports.append(StatReport(
        f"table2_row[a={tol['tol_row']:g}]", sum(1 for k in TABLE2 if abs(k[0] - tol["tol_row"]) < 1e-9),
        row_err, row_err, row_err, row_err <= tol["row_tol"],
        f"max abs deviation <= {tol['row_tol']:g} at scale {Q_SCALE}"))
    max_q = max((r.q for r in cert.rows), default=float("inf"))
    reports.append(StatReport("table2_certificate", len(cert.rows), max_q, max_q, max_q,
                              cert.ok and max_q <= 1.0, "Q <= 1 for every required pair"))
    return reports


def cmd_tables(cfg: dict, out: Output) -> int:
    report, cert = _landscape_results(cfg["recurrence"])
    reports = compare_tables(report, cert, cfg["tables"])
    out.reports("tables.json", reports)
    out.csv("tables.csv", ["metric", "estimate", "passed", "tolerance"],
            [[r.metric, r.estimate, r.passed, r.tolerance] for r in reports])
    _print_reports(reports)
    return 0 if all(r.passed for r in reports) else 1


def tune_reports(camp: CampaignConfig, results, checks: dict) -> list[StatReport]:
    reports = []
    T = camp.T
    n = len(results)
    finals = np.array([r.final_z for r in results])
    if "target_chi" in checks:
        target = camp.space.nearest(float(checks["target_chi"]))
        if "max_mean_comparisons" in checks:
            steps = comparisons_to_reach(results, target.z, T)
            m, lo, hi = mean_ci(steps)
            bound = float(checks["max_mean_comparisons"])
            reports.append(StatReport(
                f"mean_comparisons_to_reach[chi={target.chi:g}]", n, m, lo, hi, m <= bound,
                f"<= {bound:g}; campaigns that never reach it count as T={T}",
                details={"never_reached": int(sum(r.first_reached(target.z) is None for r in results))}))
        if "min_final_share" in checks:
            share = float(np.mean(finals == target.z))
            need = float(checks["min_final_share"])
            reports.append(StatReport(
                f"final_share[chi={target.chi:g}]", n, share, share, share, share >= need, f">= {need:.0%}",
                details={"histogram": final_histogram(camp, results).tolist()}))
    if "mode_chi" in checks:
        hist = final_histogram(camp, results)
        mode_z = int(np.argmax(hist)) + 1
        share = float(hist[mode_z - 1] / n)
        want = camp.space.nearest(float(checks["mode_chi"]))
        need = float(checks.get("min_mode_share", 0.0))
        reports.append(StatReport(
            f"modal_final_chi[want={want.chi:g}]", n, mode_z / camp.space.d, share, share,
            mode_z == want.z and share >= need, f"mode equals {want.chi:g} with share >= {need:.0%}",
            details={"histogram": hist.tolist(), "mode_share": share}))
    return reports


def cmd_tune(cfg: dict, out: Output, workers: int) -> int:
    camp = CampaignConfig.from_dict(cfg["campaign"], cfg["master_seed"])
    results = run_campaigns(camp, workers)
    checks = cfg.get("checks", {})
    target_z = camp.space.nearest(float(checks["target_chi"])).z if "target_chi" in checks else None
    rows = []
    for r in results:
        first = r.first_reached(target_z) if target_z is not None else None
        rows.append([r.campaign_id, r.initial_z / camp.space.d, r.final_z / camp.space.d, r.comparisons,
                     r.evaluations, "" if first is None else first])
    out.csv("campaigns.csv", ["campaign_id", "initial_chi", "final_chi", "comparisons", "evaluations",
                              "first_reach_target"], rows)
    if cfg.get("trace"):
        out.csv("trace.csv", ["campaign_id", "comparison", "proposal_chi", "accepted", "active_chi",
                              "wins_current", "wins_proposal", "draws", "winner"],
                ([r.campaign_id, *s] for r in results for s in r.steps))
    reports = tune_reports(camp, results, checks)
    out.reports("reports.json", reports)
    _print_reports(reports)
    return 0 if all(r.passed for r in reports) else 1


def cmd_blindness(cfg: dict, out: Output, workers: int) -> int:
    camp = CampaignConfig.from_dict(cfg["campaign"], cfg["master_seed"])
    b = cfg["blindness"]
    report = blindness_test(camp, int(b["oracle_samples"]), float(b["alpha"]), bool(b["expect_blind"]), workers)
    counts = report.details["counts"]
    oracle = report.details["oracle"]
    out.csv("histogram.csv", ["chi", "observed", "oracle_prob"],
            [[z / camp.space.d, c, p] for z, (c, p) in enumerate(zip(counts, oracle), start=1)])
    out.reports("reports.json", [report])
    _print_reports([report])
    return 0 if report.passed else 1


def cmd_validate(cfg: dict, out: Output) -> int:
    seed = cfg["master_seed"]
    reports = []
    for chk in cfg.get("runtime", []):
        reports += runtime_check(chk["kind"], int(chk["n"]), float(chk["chi"]), int(chk["runs"]),
                                 float(chk["target"]), float(chk["rel_tol"]), tuple(chk.get("compare", ())), seed)
    for chk in cfg.get("bracketing", []):
        for chi in chk["chis"]:
            rows = []
            reports.append(bracketing_check(int(chk["n"]), float(chi), int(chk["runs"]), float(chk["psi"]),
                                            float(chk["margin"]), float(chk["min_fraction"]), seed, rows))
            out.csv(f"trajectories/n{int(chk['n'])}_chi{float(chi):g}.csv", ["seed", "t", "fitness"], rows)
    out.reports("reports.json", reports)
    out.csv("validate.csv", ["metric", "sample_size", "estimate", "ci_low", "ci_high", "passed", "tolerance"],
            [[r.metric, r.sample_size, r.estimate, r.ci_low, r.ci_high, r.passed, r.tolerance] for r in reports])
    _print_reports(reports)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lab", description="Mutation-rate configuration laboratory.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="TOML experiment file; omitted keys take their defaults")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--seed", type=int, help="master seed (overrides the config)")
    parser.add_argument("--workers", type=int, default=1, help="worker processes for campaigns")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = load_config(args.command, args.config, args.seed)
    out = Output(args.out, cfg)
    if args.command == "landscape":
        return cmd_landscape(cfg, out)
    if args.command == "tables":
        return cmd_tables(cfg, out)
    if args.command == "tune":
        return cmd_tune(cfg, out, args.workers)
    if args.command == "blindness":
        return cmd_blindness(cfg, out, args.workers)
    return cmd_validate(cfg, out)


if __name__ == "__main__":
    sys.exit(main())
