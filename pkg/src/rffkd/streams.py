"""Deterministic random streams.

All sampling in this package runs through counter-based Philox streams so
that results are bit-reproducible from a 64-bit seed and independent of
evaluation order.  Feature-map rows get their own streams keyed by
(seed, row): row r of a map is the same whether the map has r+1 rows or a
million, and rows can be generated in parallel.  Experiment code derives
fresh 64-bit seeds for sub-tasks from (seed, labels...) via derive_seed.
"""

from __future__ import annotations

import numpy as np

__all__ = ["check_seed", "row_generator", "generator", "derive_seed"]

_SEED_BOUND = 1 << 64


def check_seed(seed: int) -> int:
    """Validate and return a seed in [0, 2^64)."""
    try:
        value = int(seed)
        exact = value == seed
    except (TypeError, ValueError):
        raise ValueError(f"seed must be an integer, got {seed!r}") from None
    if not exact:
        raise ValueError(f"seed must be an integer, got {seed!r}")
    if not (0 <= value < _SEED_BOUND):
        raise ValueError(f"seed must lie in [0, 2^64), got {value}")
    return value


def row_generator(seed: int, row: int) -> np.random.Generator:
    """Generator for one feature-map row, keyed by (seed, row).

    The 128-bit Philox key is seed * 2^64 + row, so distinct (seed, row)
    pairs give independent streams and a row's draws never depend on how
    many other rows exist.
    """
    seed = check_seed(seed)
    if not (0 <= row < _SEED_BOUND):
        raise ValueError(f"row index must lie in [0, 2^64), got {row}")
    return np.random.Generator(np.random.Philox(key=(seed << 64) | row))


def generator(seed: int) -> np.random.Generator:
    """General-purpose Philox generator for a seed.

    Keys are passed through SeedSequence mixing, so these streams never
    collide with the raw-keyed per-row streams of row_generator.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(check_seed(seed))))


def derive_seed(seed: int, *path: int) -> int:
    """Derive a fresh 64-bit seed from a base seed and an integer path.

    Used to give each (t, trial, ...) work item its own independent stream
    while keeping the whole experiment reproducible from one seed.
    """
    seed = check_seed(seed)
    ss = np.random.SeedSequence((seed, *[int(p) for p in path]))
    return int(ss.generate_state(1, np.uint64)[0])
