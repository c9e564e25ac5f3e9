"""The (1+1) EA with standard bit mutation, run under a cutoff."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import _kernels
from .problems import Kind, ProblemInstance, evaluate


@dataclass(frozen=True, order=True)
class Configuration:
    """A mutation-rate numerator chi = z/d on a discretised grid."""

    z: int
    d: int

    def __post_init__(self):
        if self.z < 1 or self.d < 1:
            raise ValueError("configurations need z >= 1 and d >= 1 (chi = 0 is not representable)")

    @property
    def chi(self) -> float:
        return self.z / self.d

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.z, self.d)

    def __str__(self):
        return f"{self.chi:g}"


class InitScheme(str, enum.Enum):
    ALL_ZEROS = "zeros"
    UNIFORM_RANDOM = "random"

    @classmethod
    def default_for(cls, kind: Kind) -> "InitScheme":
        return cls.ALL_ZEROS if Kind.parse(kind) is Kind.RIDGE else cls.UNIFORM_RANDOM

    @classmethod
    def parse(cls, name) -> "InitScheme":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "")
        if key in ("zeros", "allzeros", "0"):
            return cls.ALL_ZEROS
        if key in ("random", "uniform", "uniformrandom"):
            return cls.UNIFORM_RANDOM
        raise ValueError(f"unknown init scheme {name!r}")


@dataclass(frozen=True)
class RunRecord:
    best_fitness: int
    last_improvement_time: int
    optimum_hit_time: int | None
    iterations_used: int
    seed: int
    trajectory: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def hit(self) -> bool:
        return self.optimum_hit_time is not None

    def capped_time(self, kappa: int, penalty: float) -> float:
        """Optimisation time, or ``penalty * kappa`` if the optimum was missed."""
        return self.optimum_hit_time if self.hit else penalty * kappa


def _chi_value(chi) -> float:
    return chi.chi if isinstance(chi, Configuration) else float(chi)


def sbm_mutate(x, chi, rng: np.random.Generator) -> np.ndarray:
    """Flip each bit of ``x`` independently with probability chi/n.

    The flip count is drawn from Binomial(n, chi/n) and the positions without
    replacement, which is the same distribution as independent per-bit flips.
    """
    x = np.asarray(x, dtype=np.uint8)
    n = x.shape[0]
    chi = _chi_value(chi)
    if not 0 < chi <= n:
        raise ValueError(f"mutation rate numerator must satisfy 0 < chi <= n, got {chi} for n={n}")
    child = x.copy()
    flips = rng.binomial(n, chi / n)
    if flips:
        child[rng.choice(n, size=flips, replace=False)] ^= 1
    return child


def initial_point(instance: ProblemInstance, init: InitScheme, rng: np.random.Generator) -> np.ndarray:
    if InitScheme.parse(init) is InitScheme.ALL_ZEROS:
        return np.zeros(instance.n, dtype=np.uint8)
    return rng.integers(0, 2, size=instance.n, dtype=np.uint8)


def _run_reference(instance, chi, x, kappa, rng, checkpoints):
    fit = evaluate(instance, x)
    last_impr, hit, t = 0, None, 0
    opt = instance.optimum_fitness
    trace = np.empty(len(checkpoints), dtype=np.int64)
    ptr = 0
    if fit == opt:
        hit = 0
    while hit is None and t < kappa:
        child = sbm_mutate(x, chi, rng)
        t += 1
        cfit = evaluate(instance, child)
        if cfit >= fit:
            x = child
            if cfit > fit:
                while ptr < len(checkpoints) and checkpoints[ptr] < t:
                    trace[ptr] = fit
                    ptr += 1
                fit, last_impr = cfit, t
                if fit == opt:
                    hit = t
    trace[ptr:] = fit
    return fit, last_impr, (-1 if hit is None else hit), t, trace


def run_ea(
    instance: ProblemInstance,
    chi,
    init: InitScheme | str | None,
    kappa: int,
    seed: int,
    checkpoints: Iterable[int] | None = None,
    engine: str = "fast",
) -> RunRecord:
    """Run the (1+1) EA for at most ``kappa`` iterations or until the optimum.

    The initial evaluation is iteration 0; every mutate-and-select step costs
    one iteration.  ``last_improvement_time`` only moves on strict increases.

    ``engine="fast"`` uses the event-driven samplers for Ridge/LeadingOnes,
    ``engine="reference"`` mutates and evaluates every single iteration.  Both
    draw from the same distribution but consume the random stream differently.

    With ``checkpoints`` the record carries the fitness after each listed
    iteration count (fitness stays at the optimum once it is hit).
    """
    chi = _chi_value(chi)
    n = instance.n
    if not 0 < chi <= n:
        raise ValueError(f"mutation rate numerator must satisfy 0 < chi <= n, got {chi} for n={n}")
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    init = InitScheme.default_for(instance.kind) if init is None else InitScheme.parse(init)
    rng = np.random.default_rng(seed)
    x0 = initial_point(instance, init, rng)
    cps = np.asarray(sorted(checkpoints) if checkpoints is not None else [], dtype=np.int64)

    if engine == "reference":
        fit, last_impr, hit, used, trace = _run_reference(instance, chi, x0, int(kappa), rng, cps)
        if checkpoints is None:
            trace = None
    elif engine == "fast":
        y = instance.to_canonical(x0).copy()
        cp_out = np.empty(len(cps), dtype=np.int64)
        kernel = _kernels.ridge_run if instance.kind is Kind.RIDGE else _kernels.lo_run
        fit, last_impr, hit, used = kernel(y, chi / n, int(kappa), rng, cps, cp_out)
        trace = cp_out if checkpoints is not None else None
    else:
        raise ValueError(f"unknown engine {engine!r}")

    return RunRecord(
        best_fitness=int(fit),
        last_improvement_time=int(last_impr),
        optimum_hit_time=None if hit < 0 else int(hit),
        iterations_used=int(used),
        seed=int(seed),
        trajectory=trace,
    )
