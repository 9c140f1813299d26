"""Realization engine: seeded grid, raster scan, pattern selection.

A realization starts from a seed (bottom rows and left columns copied
verbatim from the training field, ND included) and fills the rest
bottom-up, left-to-right. Each cell takes the center value of a base
pattern chosen by randomized traversal: the first pattern within the
acceptance distance wins, otherwise the closest seen, earliest drawn on
ties. The grid keeps a principal layer (what realizations are made of)
and a representative layer (what distances compare), always derived
from one another, never drifting apart.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _scan
from .angles import representative_array
from .config import SimulationConfig, config_digest
from .errors import ValidationError
from .grids import BinaryGrid, VectorField
from .patterns import Pattern, PatternBase, dist, extract_patterns, make_template
from .rng import GENERATOR_ID, realization_seed32


@dataclass
class SimGrid:
    """Three-layer simulation lattice; NaN = ND on the value layers."""

    principal: np.ndarray
    rep: np.ndarray
    simulated: np.ndarray

    @property
    def width(self) -> int:
        return self.principal.shape[1]

    @property
    def height(self) -> int:
        return self.principal.shape[0]

    @property
    def cursor(self) -> tuple[int, int] | None:
        """First unsimulated cell in scan order, None when complete."""
        ys, xs = np.nonzero(~self.simulated)
        if ys.size == 0:
            return None
        return int(xs[0]), int(ys[0])


def init_grid(tvf: VectorField, r: int, t: int, cfg: SimulationConfig) -> SimGrid:
    """Seed a fresh grid with the bottom r rows and left t columns of tvf."""
    if r < cfg.template_h or t < cfg.template_w:
        raise ValidationError(
            f"seed extents r={r}, t={t} must cover the template "
            f"({cfg.template_w}x{cfg.template_h}); the first data event "
            "would read unsimulated cells otherwise"
        )
    if r >= tvf.height or t >= tvf.width:
        raise ValidationError(
            f"seed extents r={r}, t={t} must leave cells to simulate on a "
            f"{tvf.width}x{tvf.height} field"
        )
    ys, xs = np.mgrid[0:tvf.height, 0:tvf.width]
    seed = (ys < r) | (xs < t)
    principal = np.where(seed, tvf.angles, np.nan)
    return SimGrid(
        principal=principal,
        rep=representative_array(principal, cfg.di),
        simulated=seed,
    )


def data_event(grid: SimGrid, x: int, y: int, template) -> Pattern:
    """Template cutout of the representative layer around (x, y).

    Requires the full template in bounds; partial events at the right
    edge exist only inside the scan itself.
    """
    w, h = template.w, template.h
    if not (w <= x < grid.width - w and h <= y < grid.height):
        raise ValidationError(f"cell ({x}, {y}) does not admit the full template")
    values = np.empty(template.size)
    for j, (dx, dy) in enumerate(template.offsets):
        if not grid.simulated[y + dy, x + dx]:
            raise ValidationError(f"data event at ({x}, {y}) reads an unsimulated cell")
        values[j] = grid.rep[y + dy, x + dx]
    return Pattern(values=values, center_value=float("nan"), anchor=(x, y))


def select_pattern(event: Pattern, base: PatternBase, cfg: SimulationConfig, rng) -> Pattern:
    """Reference selection: fresh random permutation, first within
    accept_a wins, else the minimum, earliest in the permutation on ties."""
    if len(base) == 0:
        raise ValidationError("pattern base is empty")
    best = float("inf")
    best_pattern = None
    for c in rng.permutation(len(base)):
        cand = base.pattern(int(c))
        d = dist(event, cand, cfg.beta, cfg.b_param, cfg.normalization, base.field_dims)
        if d <= cfg.accept_a:
            return cand
        if d < best:
            best = d
            best_pattern = cand
    return best_pattern


@dataclass(frozen=True)
class Provenance:
    rng_seed: int
    realization_index: int
    seed32: int
    config_digest: str
    generator: str = GENERATOR_ID


@dataclass(frozen=True)
class Realization:
    field: VectorField
    facies: BinaryGrid
    provenance: Provenance


def simulate(tvf: VectorField, cfg: SimulationConfig, realization_index: int) -> Realization:
    """Produce realization number realization_index of the training field.

    Fully determined by (cfg, realization_index); distinct indices use
    independent substreams of cfg.rng_seed.
    """
    if realization_index < 0:
        raise ValidationError(f"realization index must be >= 0, got {realization_index}")
    template = make_template(cfg.template_w, cfg.template_h)
    base = extract_patterns(tvf, template, cfg.di)
    grid = init_grid(tvf, cfg.seed_rows_r, cfg.seed_cols_t, cfg)
    seed32 = realization_seed32(cfg.rng_seed, realization_index)
    off_dx = np.array([o[0] for o in template.offsets], dtype=np.int64)
    off_dy = np.array([o[1] for o in template.offsets], dtype=np.int64)
    _scan.scan_fill(
        grid.principal, grid.rep, grid.simulated,
        base.rep_values, base.center_principal, base.center_rep,
        base.anchors_x, base.anchors_y, off_dx, off_dy,
        float(cfg.beta), float(cfg.accept_a), float(np.pi) / cfg.b_param,
        cfg.normalization == "unit_scaled", seed32,
    )
    field = VectorField(grid.principal)
    return Realization(
        field=field,
        facies=field.support(),
        provenance=Provenance(
            rng_seed=cfg.rng_seed,
            realization_index=realization_index,
            seed32=seed32,
            config_digest=config_digest(cfg),
        ),
    )


def to_binary(realization: Realization) -> BinaryGrid:
    """Facies grid of a realization: sand exactly where a direction is."""
    return realization.field.support()
