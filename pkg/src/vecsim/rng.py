"""Seedable random streams with documented splitting.

All randomness flows from one 64-bit master seed. Independent streams
are derived with numpy SeedSequence spawn keys:

* contour-walk stream for the cell with row-major index i: spawn key (0, i)
* realization stream for realization index j: spawn key (1, j)

Walk streams drive PCG64 generators directly. A realization stream is
reduced to a single 32-bit word that seeds the scan kernel's internal
generator (the MT19937 that compiled code exposes through np.random).
GENERATOR_ID names this whole scheme and is recorded in provenance so
outputs from different schemes are never confused.
"""
from __future__ import annotations

import numpy as np

GENERATOR_ID = "pcg64-seedseq-mt19937-v1"


def walk_rng(master_seed: int, cell_index: int) -> np.random.Generator:
    """Independent per-cell stream used by the contour walks."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(0, cell_index))
    return np.random.Generator(np.random.PCG64(ss))


def realization_seed32(master_seed: int, index: int) -> int:
    """32-bit seed driving the scan kernel of one realization."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(1, index))
    return int(ss.generate_state(1, dtype=np.uint32)[0])
