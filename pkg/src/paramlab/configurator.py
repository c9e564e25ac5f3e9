"""ParamRLS with the +-1/d local-search operator and the eval-F / eval-T comparisons."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ea import Configuration, InitScheme, RunRecord, run_ea
from .problems import ProblemInstance
from .seeding import ARM_A, ARM_B, COIN, derive_rng, derive_seed

DEFAULT_PENALTY = 10.0
_MUTATION_STREAM = 3
_INIT_STREAM = 4


@dataclass(frozen=True)
class ParameterSpace:
    """The grid {z/d : 1 <= z <= phi*d}."""

    d: int
    phi: int

    def __post_init__(self):
        if self.d < 1 or self.phi < 1:
            raise ValueError("d and phi must be positive integers")

    @property
    def size(self) -> int:
        return self.phi * self.d

    @property
    def grid(self) -> list[Configuration]:
        return [Configuration(z, self.d) for z in range(1, self.size + 1)]

    @property
    def chis(self) -> np.ndarray:
        return np.arange(1, self.size + 1) / self.d

    def __contains__(self, theta) -> bool:
        return isinstance(theta, Configuration) and theta.d == self.d and 1 <= theta.z <= self.size

    def index(self, theta: Configuration) -> int:
        if theta not in self:
            raise ValueError(f"{theta!r} is not on the grid")
        return theta.z - 1

    def at(self, index: int) -> Configuration:
        return Configuration(index + 1, self.d)

    def nearest(self, chi: float) -> Configuration:
        z = int(round(chi * self.d))
        if not 1 <= z <= self.size:
            raise ValueError(f"chi={chi} lies outside (0, {self.phi}]")
        return Configuration(z, self.d)


@dataclass(frozen=True)
class OutOfBounds:
    """A proposal that fell off the grid (z = 0 or z = phi*d + 1); it always loses."""

    z: int
    d: int

    @property
    def chi(self) -> float:
        return self.z / self.d

    def __str__(self):
        return f"oob({self.chi:g})"


def mutate_param(theta: Configuration, space: ParameterSpace, rng: np.random.Generator):
    """Move ``theta`` one grid step up or down with probability 1/2 each."""
    step = 1 if rng.random() < 0.5 else -1
    z = theta.z + step
    if 1 <= z <= space.size:
        return Configuration(z, space.d)
    return OutOfBounds(z, space.d)


class Winner(str, enum.Enum):
    A = "A"
    B = "B"
    COIN_A = "coin->A"
    COIN_B = "coin->B"

    @property
    def favours_a(self) -> bool:
        return self in (Winner.A, Winner.COIN_A)

    @property
    def by_coin(self) -> bool:
        return self in (Winner.COIN_A, Winner.COIN_B)

    def mirrored(self) -> "Winner":
        return {Winner.A: Winner.B, Winner.B: Winner.A,
                Winner.COIN_A: Winner.COIN_B, Winner.COIN_B: Winner.COIN_A}[self]


@dataclass(frozen=True)
class ComparisonOutcome:
    wins_a: int
    wins_b: int
    draws: int
    winner: Winner
    records: list = field(default_factory=list, repr=False)
    total_a: float | None = None
    total_b: float | None = None

    @property
    def runs(self) -> int:
        return self.wins_a + self.wins_b + self.draws


class Metric(str, enum.Enum):
    FITNESS = "F"
    TIME = "T"

    @classmethod
    def parse(cls, name) -> "Metric":
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper()
        if key in ("F", "FITNESS", "BEST_FITNESS"):
            return cls.FITNESS
        if key in ("T", "TIME", "OPT_TIME", "PAR"):
            return cls.TIME
        raise ValueError(f"unknown metric {name!r}")


def _coin(rng: np.random.Generator) -> Winner:
    return Winner.COIN_A if rng.random() < 0.5 else Winner.COIN_B


def _run_pairs(a, b, instance, init, kappa, r, rng, run_seeds, engine):
    if run_seeds is None:
        run_seeds = [tuple(int(s) for s in rng.integers(0, 2**63, size=2)) for _ in range(r)]
    elif len(run_seeds) != r:
        raise ValueError("need one (seed_a, seed_b) pair per run")
    return [
        (run_ea(instance, a, init, kappa, sa, engine=engine),
         run_ea(instance, b, init, kappa, sb, engine=engine))
        for sa, sb in run_seeds
    ]


def run_winner_f(ra: RunRecord, rb: RunRecord) -> int:
    """+1 if A wins the run under the fitness metric, -1 if B does, 0 for a draw."""
    if ra.best_fitness != rb.best_fitness:
        return 1 if ra.best_fitness > rb.best_fitness else -1
    if ra.last_improvement_time != rb.last_improvement_time:
        return 1 if ra.last_improvement_time < rb.last_improvement_time else -1
    return 0


def decide_f(pairs: Sequence[tuple[RunRecord, RunRecord]], rng) -> ComparisonOutcome:
    results = [run_winner_f(ra, rb) for ra, rb in pairs]
    wins_a, wins_b = results.count(1), results.count(-1)
    if wins_a > wins_b:
        winner = Winner.A
    elif wins_b > wins_a:
        winner = Winner.B
    else:
        winner = _coin(rng)
    return ComparisonOutcome(wins_a, wins_b, len(results) - wins_a - wins_b, winner, list(pairs))


def decide_t(pairs, kappa: int, penalty: float, rng) -> ComparisonOutcome:
    times = [(ra.capped_time(kappa, penalty), rb.capped_time(kappa, penalty)) for ra, rb in pairs]
    total_a = sum(ta for ta, _ in times)
    total_b = sum(tb for _, tb in times)
    wins_a = sum(ta < tb for ta, tb in times)
    wins_b = sum(tb < ta for ta, tb in times)
    if total_a < total_b:
        winner = Winner.A
    elif total_b < total_a:
        winner = Winner.B
    else:
        winner = _coin(rng)
    return ComparisonOutcome(wins_a, wins_b, len(times) - wins_a - wins_b, winner, list(pairs),
                             total_a, total_b)


def eval_f(a, b, instance: ProblemInstance, init, kappa: int, r: int, rng: np.random.Generator,
           *, run_seeds=None, engine: str = "fast") -> ComparisonOutcome:
    """Best-fitness comparison: higher fitness after kappa wins, ties go to the
    earlier last improvement, and the overall tie is a fair coin."""
    if r < 1:
        raise ValueError("r must be at least 1")
    pairs = _run_pairs(a, b, instance, init, kappa, r, rng, run_seeds, engine)
    return decide_f(pairs, rng)


def eval_t(a, b, instance: ProblemInstance, init, kappa: int, r: int, penalty: float = DEFAULT_PENALTY,
           rng: np.random.Generator | None = None, *, run_seeds=None, engine: str = "fast") -> ComparisonOutcome:
    """Optimisation-time comparison with unfinished runs charged ``penalty * kappa`` (PAR)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if penalty < 1:
        raise ValueError("the penalty constant must be at least 1")
    if rng is None:
        raise ValueError("eval_t needs a random generator for tie breaking")
    pairs = _run_pairs(a, b, instance, init, kappa, r, rng, run_seeds, engine)
    return decide_t(pairs, kappa, penalty, rng)


def tuning_budget(T: int, kappa: int, r: int, n_instances: int = 1) -> int:
    """Total target-algorithm iterations: 2 * T * |Pi| * kappa * r."""
    return 2 * T * n_instances * kappa * r


@dataclass(frozen=True)
class Step:
    proposal: Configuration | OutOfBounds
    outcome: ComparisonOutcome | None
    accepted: bool
    active: Configuration


@dataclass
class TuningTrace:
    initial: Configuration
    steps: list[Step]
    final: Configuration
    comparisons_used: int
    budget: int

    def first_reached(self, theta: Configuration) -> int | None:
        """Number of comparisons after which the active parameter first equals ``theta``."""
        if self.initial == theta:
            return 0
        for i, step in enumerate(self.steps, start=1):
            if step.active == theta:
                return i
        return None

    @property
    def path(self) -> list[Configuration]:
        return [self.initial] + [s.active for s in self.steps]


Evaluator = Callable[[Configuration, Configuration, int], ComparisonOutcome]


def make_evaluator(metric, instance, init, kappa, r, penalty, master_seed, campaign,
                   engine="fast") -> Evaluator:
    """Comparison routine whose streams are derived from (campaign, comparison, run, arm)."""
    metric = Metric.parse(metric)

    def evaluate_pair(current, proposal, comparison):
        seeds = [(derive_seed(master_seed, campaign, comparison, run, ARM_A),
                  derive_seed(master_seed, campaign, comparison, run, ARM_B)) for run in range(r)]
        coin = derive_rng(master_seed, campaign, comparison, 0, COIN)
        if metric is Metric.FITNESS:
            return eval_f(current, proposal, instance, init, kappa, r, coin, run_seeds=seeds, engine=engine)
        return eval_t(current, proposal, instance, init, kappa, r, penalty, coin, run_seeds=seeds, engine=engine)

    return evaluate_pair


def param_rls(space: ParameterSpace, metric, instance: ProblemInstance, init, kappa: int, r: int,
              penalty: float = DEFAULT_PENALTY, T: int = 100, master_seed: int = 0, campaign: int = 0,
              *, evaluator: Evaluator | None = None, initial: Configuration | None = None,
              engine: str = "fast") -> TuningTrace:
    """Run ParamRLS for a fixed budget of ``T`` comparisons.

    The proposal replaces the active parameter iff it wins the comparison,
    including winning the coin flip on a tie.  Off-grid proposals lose without
    any runs but still use up a comparison.
    """
    if T < 0:
        raise ValueError("T must be non-negative")
    if evaluator is None:
        evaluator = make_evaluator(metric, instance, init, kappa, r, penalty, master_seed, campaign, engine)
    if initial is None:
        initial = space.at(int(derive_rng(master_seed, campaign, 0, 0, _INIT_STREAM).integers(space.size)))
    theta = initial
    steps = []
    for comparison in range(T):
        rng = derive_rng(master_seed, campaign, comparison, 0, _MUTATION_STREAM)
        proposal = mutate_param(theta, space, rng)
        if isinstance(proposal, OutOfBounds):
            steps.append(Step(proposal, None, False, theta))
            continue
        outcome = evaluator(theta, proposal, comparison)
        accepted = not outcome.winner.favours_a
        if accepted:
            theta = proposal
        steps.append(Step(proposal, outcome, accepted, theta))
    return TuningTrace(initial, steps, theta, T, tuning_budget(T, kappa, r))


def blind_walk_oracle(space: ParameterSpace, T: int, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """Empirical distribution of the final parameter when every comparison is a fair coin.

    Off-grid proposals are still rejected.  Returns probabilities indexed like
    ``space.grid``.
    """
    pos = rng.integers(0, space.size, size=n_samples)
    for _ in range(T):
        step = np.where(rng.random(n_samples) < 0.5, 1, -1)
        moved = pos + step
        ok = (moved >= 0) & (moved < space.size) & (rng.random(n_samples) < 0.5)
        pos = np.where(ok, moved, pos)
    return np.bincount(pos, minlength=space.size) / n_samples
