"""Binary erosion, contours, and iterative decomposition into shells.

A grid is eroded repeatedly; each step peels off the contour (cells
removed by that erosion). The input is always the disjoint union of
the recorded contours and the final residual, so the decomposition is
lossless by construction.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .config import ErosionStop, FixedK, MaxComponents, ResidualFraction
from .errors import EmptyInputError, ValidationError
from .grids import BinaryGrid

_N4 = ((1, 0), (-1, 0), (0, 1), (0, -1))
_N8 = _N4 + ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class StructuringElement:
    offsets: frozenset[tuple[int, int]]

    def __post_init__(self):
        if (0, 0) not in self.offsets:
            raise ValidationError("structuring element must contain the origin")


CROSS = StructuringElement(frozenset([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]))
SQUARE = StructuringElement(frozenset([(0, 0)]) | frozenset(_N8))

SELEMS = {"cross": CROSS, "square": SQUARE}


def _shifted(values: np.ndarray, dx: int, dy: int) -> np.ndarray:
    """out[y, x] = values[y+dy, x+dx], with out-of-bounds cells 0."""
    h, w = values.shape
    out = np.zeros_like(values)
    ys = slice(max(0, -dy), min(h, h - dy))
    xs = slice(max(0, -dx), min(w, w - dx))
    if ys.start < ys.stop and xs.start < xs.stop:
        out[ys, xs] = values[max(0, dy):min(h, h + dy), max(0, dx):min(w, w + dx)]
    return out


def erode(grid: BinaryGrid, selem: StructuringElement) -> BinaryGrid:
    """Keep a cell iff every selem offset lands in bounds on sand."""
    out = np.ones_like(grid.values)
    for dx, dy in sorted(selem.offsets):
        out &= _shifted(grid.values, dx, dy)
    return BinaryGrid(out)


def contour(grid: BinaryGrid, selem: StructuringElement) -> BinaryGrid:
    """Sand cells of grid that its erosion removes."""
    return BinaryGrid(grid.values & ~erode(grid, selem).values & 1)


@dataclass(frozen=True)
class DecompositionSequence:
    """Contours C_0..C_{k-1}, erosions T_0..T_k, residual T_k = erosions[-1]."""

    contours: tuple[BinaryGrid, ...]
    erosions: tuple[BinaryGrid, ...]

    def __post_init__(self):
        if len(self.erosions) != len(self.contours) + 1:
            raise ValidationError("need exactly one more erosion grid than contours")

    @property
    def residual(self) -> BinaryGrid:
        return self.erosions[-1]

    @property
    def k(self) -> int:
        return len(self.contours)

    def reconstruct(self) -> BinaryGrid:
        """Union of all contours and the residual."""
        acc = self.residual.values.copy()
        for c in self.contours:
            acc |= c.values
        return BinaryGrid(acc)

    def overlap_count(self) -> int:
        """Cells covered more than once; 0 when the union is disjoint."""
        total = sum(int(c.sand_count) for c in self.contours) + int(self.residual.sand_count)
        return total - int(self.reconstruct().sand_count)


def decompose(grid: BinaryGrid, selem: StructuringElement, stop: ErosionStop) -> DecompositionSequence:
    """Erode repeatedly, recording contours, until the stop criterion fires.

    FixedK applies exactly k erosions, fewer only if the residual runs
    out of sand first. The other criteria look ahead: an erosion is
    applied only while the resulting residual still satisfies them.
    """
    if grid.sand_count == 0:
        raise EmptyInputError("cannot decompose a grid with no sand cells")
    total = int(grid.sand_count)
    erosions = [grid]
    contours: list[BinaryGrid] = []
    current = grid
    while True:
        if isinstance(stop, FixedK) and len(contours) >= stop.k:
            break
        nxt = erode(current, selem)
        nxt_count = int(nxt.sand_count)
        if nxt_count == int(current.sand_count):
            break
        if isinstance(stop, ResidualFraction) and nxt_count < stop.rho * total:
            break
        if isinstance(stop, MaxComponents) and connected_components(nxt, 8)[0] > stop.limit:
            break
        contours.append(contour(current, selem))
        erosions.append(nxt)
        current = nxt
    return DecompositionSequence(tuple(contours), tuple(erosions))


def connected_components(grid: BinaryGrid, connectivity: int = 8) -> tuple[int, np.ndarray]:
    """Flood-fill labeling; returns (count, int32 labels with 0 = background)."""
    if connectivity not in (4, 8):
        raise ValidationError(f"connectivity must be 4 or 8, got {connectivity}")
    neighbors = _N4 if connectivity == 4 else _N8
    values = grid.values
    h, w = values.shape
    labels = np.zeros((h, w), dtype=np.int32)
    count = 0
    for y in range(h):
        for x in range(w):
            if values[y, x] == 0 or labels[y, x] != 0:
                continue
            count += 1
            labels[y, x] = count
            queue = deque([(x, y)])
            while queue:
                cx, cy = queue.popleft()
                for dx, dy in neighbors:
                    nx, ny = cx + dx, cy + dy
                    if 0 <= nx < w and 0 <= ny < h and values[ny, nx] == 1 and labels[ny, nx] == 0:
                        labels[ny, nx] = count
                        queue.append((nx, ny))
    return count, labels
