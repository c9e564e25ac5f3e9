"""Ridge and LeadingOnes benchmark functions and their XOR-mask instance classes."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

import numpy as np


class Kind(str, enum.Enum):
    RIDGE = "ridge"
    LEADING_ONES = "leadingones"

    @classmethod
    def parse(cls, name) -> "Kind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "").replace("-", "")
        if key in ("ridge",):
            return cls.RIDGE
        if key in ("leadingones", "lo"):
            return cls.LEADING_ONES
        raise ValueError(f"unknown problem kind {name!r}")


def as_bits(x, n: int | None = None) -> np.ndarray:
    """Coerce ``x`` (sequence, array or '0101' string) to a uint8 bit array."""
    if isinstance(x, str):
        arr = np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(x, dtype=np.uint8)
    if arr.ndim != 1 or np.any(arr > 1):
        raise ValueError("bit strings must be one-dimensional with entries in {0, 1}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"bit string has length {arr.shape[0]}, expected {n}")
    return arr


def leading_ones(y: np.ndarray) -> int:
    zeros = np.flatnonzero(y == 0)
    return int(zeros[0]) if zeros.size else int(y.shape[0])


def ridge(y: np.ndarray) -> int:
    n = y.shape[0]
    k = leading_ones(y)
    # on the ridge iff everything after the leading ones is zero
    if not y[k:].any():
        return n + k
    return n - int(y.sum())


@dataclass(frozen=True)
class ProblemInstance:
    """One member of a black-box class: ``f_a(x) = f(x XOR a)``."""

    kind: Kind
    n: int
    mask: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        mask = as_bits(self.mask, self.n).copy()
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "kind", Kind.parse(self.kind))

    @classmethod
    def canonical(cls, kind, n: int) -> "ProblemInstance":
        return cls(Kind.parse(kind), n, np.zeros(n, dtype=np.uint8))

    @property
    def optimum_fitness(self) -> int:
        return 2 * self.n if self.kind is Kind.RIDGE else self.n

    def to_canonical(self, x) -> np.ndarray:
        """Map ``x`` into the frame of the all-zero mask."""
        return as_bits(x, self.n) ^ self.mask

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (self.kind, self.n) == (other.kind, other.n) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.kind, self.n, self.mask.tobytes()))


def evaluate(instance: ProblemInstance, x) -> int:
    y = instance.to_canonical(x)
    if instance.kind is Kind.RIDGE:
        return ridge(y)
    return leading_ones(y)


def evaluate_many(instance: ProblemInstance, xs) -> np.ndarray:
    """Fitness of every row of the 2-d bit array ``xs``."""
    ys = np.asarray(xs, dtype=np.uint8) ^ instance.mask
    if ys.ndim != 2 or ys.shape[1] != instance.n:
        raise ValueError(f"expected an array of shape (m, {instance.n})")
    n = instance.n
    lo = np.where(ys.all(axis=1), n, np.argmin(ys, axis=1)).astype(np.int64)
    if instance.kind is Kind.LEADING_ONES:
        return lo
    ones = ys.sum(axis=1, dtype=np.int64)
    return np.where(ones == lo, n + lo, n - ones)


def is_optimum(instance: ProblemInstance, x) -> bool:
    return evaluate(instance, x) == instance.optimum_fitness


_RANDOM_MASK = re.compile(r"^random\((\d+)\)$")


def mask_from_descriptor(spec, n: int) -> np.ndarray:
    """Build a mask from ``"zeros"``, ``"random(seed)"`` or a hex string.

    Hex masks are read most-significant bit first and left-padded with zeros
    to ``n`` bits.
    """
    if isinstance(spec, str):
        text = spec.strip().lower()
        if text == "zeros":
            return np.zeros(n, dtype=np.uint8)
        m = _RANDOM_MASK.match(text)
        if m:
            rng = np.random.default_rng(int(m.group(1)))
            return rng.integers(0, 2, size=n, dtype=np.uint8)
        if text.startswith("0x"):
            text = text[2:]
        value = int(text, 16)
        if value.bit_length() > n:
            raise ValueError(f"hex mask {spec!r} does not fit in {n} bits")
        return as_bits(format(value, f"0{n}b"), n)
    return as_bits(spec, n)


def instance_from_descriptor(desc: dict) -> ProblemInstance:
    """Parse ``{kind, n, mask}`` from an experiment config."""
    n = int(desc["n"])
    return ProblemInstance(Kind.parse(desc["kind"]), n, mask_from_descriptor(desc.get("mask", "zeros"), n))
