"""Index-derived seeds so results never depend on scheduling order."""

import numpy as np

ARM_A, ARM_B, COIN = 0, 1, 2


def derive_seed(master_seed: int, *path: int) -> int:
    """64-bit seed for the stream identified by ``path`` under ``master_seed``."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, *path))
