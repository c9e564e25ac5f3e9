"""Leading-constant fitness-bound recurrences for the (1+1) EA on LeadingOnes.

Per period of n^2/psi iterations the bounds advance as

    c_u(i+1) = c_u(i) + 2 chi / (psi * exp(chi * c_u(i)))
    c_l(i+1) = c_l(i) + 2 chi / (psi * exp(chi * c_u(i+1)))

starting from zero; between the ends of periods i and i+1 the fitness/n lies
in [c_l(i), c_u(i+1)] (ignoring o(n) terms).  Everything here is plain
double-precision arithmetic evaluated in recurrence order, with an optional
``numpy.longdouble`` mode for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

PSI_TABLE = 1_000_000
LO_TERMINAL_PERIOD = 772_075
LO_BLIND_COEFFICIENT = 0.772075
DEFAULT_EPSILON = 1e-11
TABLE_GRID = tuple(z / 10 for z in range(1, 31))
Q_SCALE = 100_000


class NotAheadError(ValueError):
    """The leader's lower bound does not exceed the trailer's upper bound."""


class CertificateRefused(RuntimeError):
    def __init__(self, certificate: "FinishFirstCertificate"):
        self.certificate = certificate
        lines = [f"a={f.a:g} b={f.b:g} period={f.period}: {f.reason}" for f in certificate.failures]
        super().__init__("finishes-first certificate refused:\n  " + "\n  ".join(lines))


@dataclass
class RecurrenceState:
    chi: float
    psi: float
    c_lower: np.ndarray
    c_upper: np.ndarray

    @property
    def periods(self) -> int:
        return len(self.c_upper) - 1

    def interval(self, i: int) -> tuple[float, float]:
        """Fitness/n range between the ends of periods i and i+1."""
        return float(self.c_lower[i]), float(self.c_upper[i + 1])


def iterate_recurrence(chi: float, psi: float, n_periods: int, precision: str = "double") -> RecurrenceState:
    if chi <= 0 or psi < 1:
        raise ValueError("need chi > 0 and psi >= 1")
    if precision == "double":
        cl = np.empty(n_periods + 1)
        cu = np.empty(n_periods + 1)
        _kernels.recurrence_curves(float(chi), float(psi), int(n_periods), cl, cu)
    elif precision == "extended":
        c, p = np.longdouble(chi), np.longdouble(psi)
        cl = np.zeros(n_periods + 1, dtype=np.longdouble)
        cu = np.zeros(n_periods + 1, dtype=np.longdouble)
        two = np.longdouble(2)
        for i in range(n_periods):
            cu[i + 1] = cu[i] + two * c / (p * np.exp(c * cu[i]))
            cl[i + 1] = cl[i] + two * c / (p * np.exp(c * cu[i + 1]))
    else:
        raise ValueError(f"unknown precision {precision!r}")
    return RecurrenceState(float(chi), float(psi), cl, cu)


def _landscape_scan_extended(chis, psi, max_periods):
    chis = np.asarray(chis, dtype=np.longdouble)
    psi = np.longdouble(psi)
    m = len(chis)
    cl = np.zeros(m, dtype=np.longdouble)
    cu = np.zeros(m, dtype=np.longdouble)
    two_chi = np.longdouble(2) * chis
    peak = np.full(max_periods + 1, -1, dtype=np.int64)
    overlaps = np.zeros(max_periods + 1, dtype=np.int64)
    for i in range(max_periods + 1):
        cu_next = cu + two_chi / (psi * np.exp(chis * cu))
        cl_next = cl + two_chi / (psi * np.exp(chis * cu_next))
        up = cl[1:] > cu_next[:-1]
        down = ~up & (cl[:-1] > cu_next[1:])
        n_overlap = m - 1 - int(up.sum()) - int(down.sum())
        overlaps[i] = n_overlap
        if n_overlap == 0:
            first_down = np.argmax(down) if down.any() else m - 1
            if not up[first_down:].any():
                peak[i] = first_down
        cl, cu = cl_next, cu_next
    return peak, overlaps


@dataclass
class LandscapeReport:
    """Per-period verdicts: ``peak[i]`` is the grid index of the certified
    optimum for cutoffs in [i, i+1] * n^2/psi, or -1 if uncertified."""

    psi: float
    grid: tuple[float, ...]
    peak: np.ndarray = field(repr=False)
    overlaps: np.ndarray = field(repr=False)

    @property
    def max_periods(self) -> int:
        return len(self.peak) - 1

    def period_of(self, kappa_coeff: float) -> int:
        return int(math.floor(kappa_coeff * self.psi + 1e-9))

    def optimum_at(self, kappa_coeff: float) -> float | None:
        """Certified optimal chi for cutoff ``kappa_coeff * n^2``, or None."""
        i = self.period_of(kappa_coeff)
        if not 0 <= i <= self.max_periods:
            raise ValueError("cutoff outside the scanned range")
        return None if self.peak[i] < 0 else self.grid[self.peak[i]]

    def unimodal_at(self, kappa_coeff: float) -> bool:
        return self.optimum_at(kappa_coeff) is not None

    def period_ranges(self) -> dict[float, tuple[int, int]]:
        """Longest run of consecutive periods certified with each chi as the peak."""
        peak = self.peak
        change = np.flatnonzero(np.diff(peak)) + 1
        starts = np.concatenate(([0], change))
        ends = np.concatenate((change - 1, [len(peak) - 1]))
        best: dict[float, tuple[int, int]] = {}
        for s, e in zip(starts, ends):
            if peak[s] < 0:
                continue
            chi = self.grid[peak[s]]
            if chi not in best or e - s > best[chi][1] - best[chi][0]:
                best[chi] = (int(s), int(e))
        return best

    def kappa_ranges(self) -> dict[float, tuple[float, float]]:
        return {chi: (lo / self.psi, hi / self.psi) for chi, (lo, hi) in self.period_ranges().items()}

    def neighbour_overlaps(self, i: int) -> list[tuple[float, float, float]]:
        """(chi_k, chi_k+1, signed gap) for neighbouring pairs at period ``i``.

        The gap is positive when the intervals are disjoint and negative by
        the overlap length otherwise.
        """
        states = [iterate_recurrence(c, self.psi, i + 1) for c in self.grid]
        out = []
        for sa, sb in zip(states, states[1:]):
            la, ua = sa.interval(i)
            lb, ub = sb.interval(i)
            out.append((sa.chi, sb.chi, max(lb - ua, la - ub)))
        return out


def certify_landscape(grid=TABLE_GRID, psi: float = PSI_TABLE, max_periods: int = LO_TERMINAL_PERIOD,
                      precision: str = "double") -> LandscapeReport:
    """Check, period by period, that every neighbouring pair of configurations
    is strictly ordered and that the ordering rises to a single peak."""
    grid = tuple(float(c) for c in grid)
    if list(grid) != sorted(grid):
        raise ValueError("grid must be sorted ascending")
    if precision == "double":
        peak = np.empty(max_periods + 1, dtype=np.int64)
        overlaps = np.empty(max_periods + 1, dtype=np.int64)
        _kernels.landscape_scan(np.asarray(grid), float(psi), int(max_periods), peak, overlaps)
    elif precision == "extended":
        peak, overlaps = _landscape_scan_extended(grid, psi, max_periods)
    else:
        raise ValueError(f"unknown precision {precision!r}")
    return LandscapeReport(float(psi), grid, peak, overlaps)


def remains_ahead_quantity(a: float, b: float, state_a: RecurrenceState, state_b: RecurrenceState,
                           i: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """Ratio of the trailer's catch-up rate to the leader's finishing rate.

    A value <= 1 certifies that configuration ``a`` reaches the optimum before
    ``b`` covers the gap between them.
    """
    cla = float(state_a.c_lower[i])
    cub = float(state_b.c_upper[i])
    clb = float(state_b.c_lower[i])
    if not cla > cub:
        raise NotAheadError(f"chi={a:g} is not ahead of chi={b:g} at period {i}: {cla!r} <= {cub!r}")
    numerator = 2 * b / ((cla - cub) * math.exp(b * clb)) + epsilon
    denominator = 2 * a / ((1 - cla) * math.exp(a))
    return numerator / denominator


@dataclass(frozen=True)
class FinishFirstRow:
    a: float
    b: float
    period: int
    q: float

    @property
    def scaled(self) -> float:
        return self.q * Q_SCALE


@dataclass(frozen=True)
class Failure:
    a: float
    b: float
    period: int
    reason: str


@dataclass
class FinishFirstCertificate:
    optimum: float
    start_period: int
    epsilon: float
    rows: list[FinishFirstRow]
    failures: list[Failure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def lookup(self, a: float, b: float) -> FinishFirstRow:
        for row in self.rows:
            if math.isclose(row.a, a) and math.isclose(row.b, b):
                return row
        raise KeyError((a, b))


def required_pairs(grid, optimum: float) -> list[tuple[int, int]]:
    """(leader, trailer) index pairs on the same side of the optimum, leader closer."""
    grid = list(grid)
    pairs = []
    for ia, a in enumerate(grid):
        for ib, b in enumerate(grid):
            if (b < a <= optimum + 1e-12) or (optimum - 1e-12 <= a < b):
                pairs.append((ia, ib))
    return pairs


def certify_finishes_first(grid=TABLE_GRID, psi: float = PSI_TABLE, start_period: int = LO_TERMINAL_PERIOD + 1,
                           epsilon: float = DEFAULT_EPSILON, optimum: float | None = None,
                           strict: bool = True) -> FinishFirstCertificate:
    """Certify that, for cutoffs from ``start_period`` on, the configuration
    closer to the optimum wins against every configuration behind it.

    For each pair the leader a is checked to be strictly ahead on every
    period up to its terminal period (the last period with c_u(a) < 1), and
    the remains-ahead quantity is evaluated at that terminal period.
    """
    grid = tuple(float(c) for c in grid)
    if optimum is None:
        # the leader at the start is the configuration with the largest lower bound
        lowers = [iterate_recurrence(c, psi, start_period).c_lower[start_period] for c in grid]
        optimum = grid[int(np.argmax(lowers))]
    pairs = required_pairs(grid, optimum)
    pa = np.array([p[0] for p in pairs], dtype=np.int64)
    pb = np.array([p[1] for p in pairs], dtype=np.int64)
    q = np.full(len(pairs), np.nan)
    q_period = np.full(len(pairs), -1, dtype=np.int64)
    bad = np.full(len(pairs), -1, dtype=np.int64)
    horizon = int(100 * psi)
    _kernels.finishes_first_scan(np.asarray(grid), float(psi), int(start_period), pa, pb,
                                 float(epsilon), horizon, q, q_period, bad)
    rows, failures = [], []
    for k, (ia, ib) in enumerate(pairs):
        a, b = grid[ia], grid[ib]
        if bad[k] >= 0:
            failures.append(Failure(a, b, int(bad[k]), "leader not strictly ahead"))
        if q_period[k] < 0:
            failures.append(Failure(a, b, horizon, "leader never reached c_u >= 1"))
            continue
        rows.append(FinishFirstRow(a, b, int(q_period[k]), float(q[k])))
        if not q[k] <= 1:
            failures.append(Failure(a, b, int(q_period[k]), f"remains-ahead quantity {q[k]:.6g} > 1"))
    cert = FinishFirstCertificate(optimum, start_period, epsilon, rows, failures)
    if strict and failures:
        raise CertificateRefused(cert)
    return cert


def lo_blindness_threshold(grid=TABLE_GRID, psi: float = PSI_TABLE) -> float:
    """Largest i/psi such that c_u(chi, i) < 1 for every chi on the grid."""
    last = []
    for chi in grid:
        n = int(2 * psi)
        while True:
            cu = iterate_recurrence(chi, psi, n).c_upper
            below = np.flatnonzero(cu >= 1.0)
            if below.size:
                last.append(int(below[0]) - 1)
                break
            n *= 2
    return min(last) / psi


def ridge_drift(chi: float, n: int) -> tuple[float, float]:
    """Lower and upper bounds on the expected one-step Ridge progress off the optimum.

    lower = (chi/n)(1 - chi/n)^(n-1), the single-bit improvement;
    upper = (1 - chi/n)^n * chi (n - chi) / (n - 2 chi)^2, summing all jumps.
    """
    if chi <= 0:
        raise ValueError("chi must be positive")
    if chi >= n / 2:
        raise ValueError(f"upper drift bound undefined for chi >= n/2 (chi={chi}, n={n})")
    p = chi / n
    lower = p * (1 - p) ** (n - 1)
    upper = (1 - p) ** n * chi * (n - chi) / (n - 2 * chi) ** 2
    return lower, upper


def ridge_blindness_threshold(epsilon: float) -> float:
    """Coefficient of n^2 below which no configuration finishes Ridge w.o.p."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return (1 - epsilon) * math.e
