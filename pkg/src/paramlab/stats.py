"""Small statistics helpers shared by the harness and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

Z95 = 1.959963984540054


@dataclass
class StatReport:
    metric: str
    sample_size: int
    estimate: float
    ci_low: float
    ci_high: float
    passed: bool
    tolerance: str
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"[{verdict}] {self.metric}: estimate={self.estimate:.6g} "
                f"95%CI=[{self.ci_low:.6g}, {self.ci_high:.6g}] n={self.sample_size} ({self.tolerance})")

    def as_dict(self) -> dict:
        return {
            "metric": self.metric, "sample_size": self.sample_size, "estimate": self.estimate,
            "ci_low": self.ci_low, "ci_high": self.ci_high, "passed": self.passed,
            "tolerance": self.tolerance, "details": self.details,
        }


def mean_ci(values) -> tuple[float, float, float]:
    """Sample mean with a normal-approximation 95% interval."""
    x = np.asarray(values, dtype=float)
    m = float(x.mean())
    half = Z95 * float(x.std(ddof=1)) / np.sqrt(len(x)) if len(x) > 1 else float("inf")
    return m, m - half, m + half


def merge_sparse_bins(observed, expected, min_expected: float = 5.0):
    """Merge adjacent bins left to right until each expected count reaches ``min_expected``."""
    obs_out, exp_out = [], []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp_out:
            obs_out[-1] += acc_o
            exp_out[-1] += acc_e
        else:
            obs_out.append(acc_o)
            exp_out.append(acc_e)
    return np.array(obs_out), np.array(exp_out)


def chi_square_gof(observed_counts, reference_probs, min_expected: float = 5.0):
    """Chi-square goodness of fit of counts against a reference distribution.

    Returns (statistic, p_value, degrees_of_freedom).
    """
    observed = np.asarray(observed_counts, dtype=float)
    probs = np.asarray(reference_probs, dtype=float)
    expected = probs / probs.sum() * observed.sum()
    obs, exp = merge_sparse_bins(observed, expected, min_expected)
    if len(obs) < 2:
        return 0.0, 1.0, 0
    stat, p = stats.chisquare(obs, exp)
    return float(stat), float(p), len(obs) - 1
