"""Training vector field construction.

Directions are estimated on the decomposition contours by walking along
each contour and averaging two secant directions, then the remaining
cells of the reservoir are filled in by windowed averaging. Walks from
distinct cells draw from independent rng substreams keyed by the cell's
row-major index, so construction order cannot change the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .angles import DirectionalInterval, principal_array, representative_array, wrap_principal
from .config import SimulationConfig
from .errors import ValidationError
from .grids import BinaryGrid, VectorField
from .morphology import SELEMS, DecompositionSequence, decompose
from .rng import walk_rng

_NEIGHBORS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))


@dataclass
class WalkState:
    """Position and history of one contour walk."""

    current: tuple[int, int]
    visited: set[tuple[int, int]] = field(default_factory=set)

    def __post_init__(self):
        self.visited.add(self.current)

    def advance(self, cell: tuple[int, int]) -> None:
        self.current = cell
        self.visited.add(cell)


def secant_angle(p: tuple[int, int], q: tuple[int, int]) -> float:
    """Direction of the segment p -> q against the x axis, in (-pi, pi]."""
    if p == q:
        raise ValidationError(f"degenerate segment at {p}: endpoints coincide")
    return math.atan2(q[1] - p[1], q[0] - p[0])


def walk_step(contour: BinaryGrid, state: WalkState, di: DirectionalInterval, rng) -> tuple[int, int] | None:
    """One step: a uniformly random unvisited 8-neighbor in direction di.

    Returns None when the walk is stuck; the caller decides what that
    means. The state is not modified.
    """
    x, y = state.current
    v = contour.values
    h, w = v.shape
    candidates = []
    for dx, dy in _NEIGHBORS:
        nx, ny = x + dx, y + dy
        if not (0 <= nx < w and 0 <= ny < h):
            continue
        if v[ny, nx] != 1 or (nx, ny) in state.visited:
            continue
        if di.contains(math.atan2(dy, dx)):
            candidates.append((nx, ny))
    if not candidates:
        return None
    return candidates[int(rng.integers(len(candidates)))]


def vector_at(contour: BinaryGrid, p: tuple[int, int], step_n: int, step_m: int,
              di: DirectionalInterval, rng) -> float | None:
    """Average of the two secant directions reached by walks of n and m steps.

    The walks are independent (no shared prefix). Returns None when
    either walk gets stuck before completing, leaving the cell to the
    interpolation stage. Every step direction lies in di, so both
    secants do too (a sum of vectors from a cone of opening < pi stays
    in the cone), and the representative average is well defined.
    """
    ends = []
    for steps in (step_n, step_m):
        state = WalkState(p)
        for _ in range(steps):
            q = walk_step(contour, state, di, rng)
            if q is None:
                return None
            state.advance(q)
        ends.append(state.current)
    mean = 0.5 * (di.representative(secant_angle(p, ends[0]))
                  + di.representative(secant_angle(p, ends[1])))
    return wrap_principal(mean)


def build_contour_field(seq: DecompositionSequence, cfg: SimulationConfig, seed: int) -> VectorField:
    """Attempt a vector at every contour cell; failures and residual stay ND."""
    h, w = seq.erosions[0].values.shape
    vals = np.full((h, w), np.nan)
    for c in seq.contours:
        ys, xs = np.nonzero(c.values)
        for y, x in zip(ys.tolist(), xs.tolist()):
            rng = walk_rng(seed, y * w + x)
            a = vector_at(c, (x, y), cfg.step_n, cfg.step_m, cfg.di, rng)
            if a is not None:
                vals[y, x] = a
    return VectorField(vals)


@dataclass(frozen=True)
class InterpStats:
    passes: int
    final_radius: int


@dataclass(frozen=True)
class TvfStats:
    coverage: float
    passes: int
    erosions: int
    final_radius: int


def _box_sum(a: np.ndarray, r: int) -> np.ndarray:
    """Sum of a over the clipped Chebyshev window of radius r per cell."""
    h, w = a.shape
    c = np.zeros((h + 1, w + 1))
    c[1:, 1:] = np.cumsum(np.cumsum(a, axis=0), axis=1)
    y0 = np.clip(np.arange(h) - r, 0, h)
    y1 = np.clip(np.arange(h) + r + 1, 0, h)
    x0 = np.clip(np.arange(w) - r, 0, w)
    x1 = np.clip(np.arange(w) + r + 1, 0, w)
    return c[np.ix_(y1, x1)] - c[np.ix_(y0, x1)] - c[np.ix_(y1, x0)] + c[np.ix_(y0, x0)]


def interpolate(partial: VectorField, reservoir: BinaryGrid, radius: int,
                di: DirectionalInterval) -> tuple[VectorField, InterpStats]:
    """Fill ND reservoir cells with windowed means of defined directions.

    Each pass assigns every fillable ND cell the arithmetic mean of the
    interval representatives of defined cells within the Chebyshev
    window, evaluated against the state at the start of the pass. A
    stalled pass widens the window by one and does not count. A field
    with no defined cell at all gets the interval midpoint directly;
    with at least one defined cell the growing window reaches it before
    the radius cap can fire.
    """
    if partial.angles.shape != reservoir.values.shape:
        raise ValidationError("field and reservoir dimensions differ")
    res = reservoir.values.astype(bool)
    vals = partial.angles.copy()
    if (~np.isnan(vals) & ~res).any():
        raise ValidationError("field has directions outside the reservoir")
    if not (~np.isnan(vals)).any():
        vals[res] = di.midpoint
        return VectorField(vals), InterpStats(passes=0, final_radius=radius)
    passes = 0
    r = radius
    limit = max(reservoir.width, reservoir.height)
    while True:
        defined = ~np.isnan(vals)
        todo = res & ~defined
        if not todo.any():
            break
        rep = np.where(defined, representative_array(vals, di), 0.0)
        counts = _box_sum(defined.astype(np.float64), r)
        can = todo & (counts > 0)
        if not can.any():
            r += 1
            if r > limit:
                vals[todo] = di.midpoint
                break
            continue
        means = _box_sum(rep, r)[can] / counts[can]
        vals[can] = principal_array(means)
        passes += 1
    return VectorField(vals), InterpStats(passes=passes, final_radius=r)


def build_tvf(grid: BinaryGrid, cfg: SimulationConfig, seed: int | None = None) -> tuple[VectorField, TvfStats]:
    """Decompose, walk the contours, interpolate; total on the reservoir.

    The result is ND exactly off the sand support and every defined
    angle lies in cfg.di. Uses cfg.rng_seed unless an explicit seed is
    given.
    """
    if seed is None:
        seed = cfg.rng_seed
    seq = decompose(grid, SELEMS[cfg.selem], cfg.erosion_stop)
    partial = build_contour_field(seq, cfg, seed)
    coverage = int(partial.defined_mask.sum()) / grid.sand_count
    full, istats = interpolate(partial, grid, cfg.interp_radius, cfg.di)
    stats = TvfStats(coverage=coverage, passes=istats.passes,
                     erosions=seq.k, final_radius=istats.final_radius)
    return full, stats
