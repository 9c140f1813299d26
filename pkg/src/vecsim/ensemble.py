"""Reductions across realizations: E-type, connectivity, variability."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .grids import BinaryGrid
from .morphology import connected_components


@dataclass(frozen=True)
class EtypeMap:
    """Per-cell sand frequency over an ensemble."""

    values: np.ndarray  # float64 in [0, 1]
    count: int

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


def _check_uniform(grids: list[BinaryGrid]) -> None:
    dims = {(g.width, g.height) for g in grids}
    if len(dims) > 1:
        raise ValidationError(f"realizations have mixed dimensions: {sorted(dims)}")


def etype(realizations: list[BinaryGrid]) -> EtypeMap:
    """Cell-wise mean facies."""
    if not realizations:
        raise ValidationError("etype needs at least one realization")
    _check_uniform(realizations)
    stack = np.stack([g.values for g in realizations]).astype(np.float64)
    return EtypeMap(values=stack.mean(axis=0), count=len(realizations))


@dataclass(frozen=True)
class RealizationStats:
    index: int
    components: int
    largest_fraction: float
    sand_fraction: float


@dataclass(frozen=True)
class ConnectivityReport:
    training: RealizationStats
    rows: tuple[RealizationStats, ...]
    median_component_ratio: float


def _grid_stats(index: int, grid: BinaryGrid) -> RealizationStats:
    count, labels = connected_components(grid, 8)
    if count == 0:
        largest = 0.0
    else:
        sizes = np.bincount(labels.ravel())[1:]
        largest = float(sizes.max() / grid.sand_count)
    return RealizationStats(
        index=index,
        components=count,
        largest_fraction=largest,
        sand_fraction=grid.sand_fraction,
    )


def connectivity_report(realizations: list[BinaryGrid], training: BinaryGrid) -> ConnectivityReport:
    """Component statistics per realization against the training baseline."""
    if not realizations:
        raise ValidationError("connectivity report needs at least one realization")
    _check_uniform(realizations + [training])
    base = _grid_stats(-1, training)
    if base.components == 0:
        raise ValidationError("training image has no sand components")
    rows = tuple(_grid_stats(i, g) for i, g in enumerate(realizations))
    ratios = [r.components / base.components for r in rows]
    return ConnectivityReport(
        training=base,
        rows=rows,
        median_component_ratio=float(np.median(ratios)),
    )


def variability(realizations: list[BinaryGrid], seed_rows: int = 0, seed_cols: int = 0) -> float:
    """Mean pairwise fraction of disagreeing cells outside the seed region.

    The seed (bottom seed_rows rows, left seed_cols columns) is excluded
    because it is copied, not simulated; including it would deflate the
    number.
    """
    if len(realizations) < 2:
        raise ValidationError("variability needs at least two realizations")
    _check_uniform(realizations)
    h, w = realizations[0].height, realizations[0].width
    mask = np.ones((h, w), dtype=bool)
    mask[:seed_rows, :] = False
    mask[:, :seed_cols] = False
    if not mask.any():
        raise ValidationError("seed region covers the whole grid")
    cells = [g.values[mask] for g in realizations]
    total = 0.0
    pairs = 0
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            total += float((cells[i] != cells[j]).mean())
            pairs += 1
    return total / pairs
