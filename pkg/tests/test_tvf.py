import math

import numpy as np
import pytest

from vecsim.angles import DirectionalInterval
from vecsim.config import FixedK, SimulationConfig
from vecsim.errors import EmptyInputError, ValidationError
from vecsim.grids import BinaryGrid, VectorField
from vecsim.morphology import CROSS, decompose
from vecsim.tvf import (
    WalkState,
    build_contour_field,
    build_tvf,
    interpolate,
    secant_angle,
    vector_at,
    walk_step,
)

DI = DirectionalInterval(-0.8, 0.8)


def bar_grid(width, height=3, row=1, span=None):
    v = np.zeros((height, width), dtype=np.uint8)
    x0, x1 = span if span else (0, width)
    v[row, x0:x1] = 1
    return BinaryGrid(v)


class TestSecantAngle:
    @pytest.mark.parametrize("q, want", [
        ((1, 0), 0.0),
        ((0, 1), math.pi / 2),
        ((-1, 0), math.pi),
        ((1, 1), math.pi / 4),
        ((2, -2), -math.pi / 4),
    ])
    def test_axis_and_diagonal(self, q, want):
        assert secant_angle((0, 0), q) == pytest.approx(want, abs=0)

    def test_translation_invariant(self):
        assert secant_angle((5, 7), (6, 7)) == 0.0

    def test_degenerate_raises(self):
        with pytest.raises(ValidationError, match="degenerate"):
            secant_angle((3, 3), (3, 3))


class TestWalkStep:
    def test_straight_bar_moves_right(self):
        c = bar_grid(5)
        rng = np.random.default_rng(0)
        state = WalkState((2, 1))
        assert walk_step(c, state, DI, rng) == (3, 1)

    def test_direction_filter_blocks_backtrack(self):
        # the left neighbor is sand but lies at angle pi, outside di
        c = bar_grid(5)
        rng = np.random.default_rng(0)
        state = WalkState((4, 1))
        assert walk_step(c, state, DI, rng) is None

    def test_no_revisit(self):
        c = bar_grid(5)
        rng = np.random.default_rng(0)
        state = WalkState((2, 1))
        state.visited.add((3, 1))
        assert walk_step(c, state, DI, rng) is None

    def test_consumes_one_draw_even_for_single_candidate(self):
        c = bar_grid(5)
        a = np.random.default_rng(42)
        b = np.random.default_rng(42)
        walk_step(c, WalkState((2, 1)), DI, a)
        b.integers(1)
        assert int(a.integers(10**9)) == int(b.integers(10**9))

    def test_junction_choice_is_uniform(self):
        v = np.zeros((3, 3), dtype=np.uint8)
        v[0, 1] = 1
        v[2, 1] = 1
        c = BinaryGrid(v)
        rng = np.random.default_rng(123)
        hits = 0
        trials = 10000
        for _ in range(trials):
            nxt = walk_step(c, WalkState((0, 1)), DI, rng)
            assert nxt in ((1, 0), (1, 2))
            hits += nxt == (1, 2)
        assert abs(hits / trials - 0.5) < 0.05


class TestVectorAt:
    def test_straight_bar_is_zero_exact(self):
        c = bar_grid(8)
        rng = np.random.default_rng(0)
        assert vector_at(c, (0, 1), 1, 3, DI, rng) == 0.0

    def test_diagonal_is_quarter_pi(self):
        v = np.zeros((6, 6), dtype=np.uint8)
        for i in range(6):
            v[i, i] = 1
        c = BinaryGrid(v)
        rng = np.random.default_rng(0)
        got = vector_at(c, (0, 0), 1, 3, DI, rng)
        assert got == pytest.approx(math.pi / 4, abs=1e-15)

    def test_too_short_for_long_walk_is_none(self):
        c = bar_grid(4, span=(0, 3))
        rng = np.random.default_rng(0)
        assert vector_at(c, (0, 1), 1, 3, DI, rng) is None

    def test_result_lies_in_interval(self, mini_grid, mini_cfg):
        seq = decompose(mini_grid, CROSS, FixedK(1))
        field = build_contour_field(seq, mini_cfg, seed=7)
        defined = field.angles[field.defined_mask]
        for a in defined:
            assert DI.contains(float(a), tol=1e-12)


class TestBuildContourField:
    def test_thin_bar_interior_exact_and_cap_nd(self):
        g = bar_grid(12)
        cfg = SimulationConfig(di=DI, erosion_stop=FixedK(1), template_w=2,
                               template_h=2, seed_rows_r=2, seed_cols_t=2)
        seq = decompose(g, CROSS, cfg.erosion_stop)
        field = build_contour_field(seq, cfg, seed=0)
        for x in range(12):
            if x <= 12 - 1 - cfg.step_m:
                assert field.angles[1, x] == 0.0
            else:
                assert np.isnan(field.angles[1, x])

    def test_isolated_cell_stays_nd(self):
        v = np.zeros((5, 5), dtype=np.uint8)
        v[2, 2] = 1
        cfg = SimulationConfig(di=DI, erosion_stop=FixedK(1), template_w=2,
                               template_h=2, seed_rows_r=2, seed_cols_t=2)
        seq = decompose(BinaryGrid(v), CROSS, cfg.erosion_stop)
        field = build_contour_field(seq, cfg, seed=0)
        assert field.all_nd

    def test_residual_cells_left_nd(self, mini_grid, mini_cfg):
        seq = decompose(mini_grid, CROSS, FixedK(1))
        field = build_contour_field(seq, mini_cfg, seed=7)
        residual = seq.residual.values.astype(bool)
        assert not (field.defined_mask & residual).any()


class TestInterpolate:
    def test_mean_of_two_neighbors(self):
        vals = np.array([[np.pi / 6, np.nan, np.pi / 3]])
        res = BinaryGrid(np.ones((1, 3), dtype=np.uint8))
        out, stats = interpolate(VectorField(vals), res, 1, DI)
        assert out.angles[0, 1] == pytest.approx(np.pi / 4, rel=1e-12)
        assert stats.passes == 1

    def test_already_total_zero_passes(self):
        vals = np.full((2, 2), 0.25)
        res = BinaryGrid(np.ones((2, 2), dtype=np.uint8))
        out, stats = interpolate(VectorField(vals), res, 1, DI)
        assert stats.passes == 0
        assert (out.angles == 0.25).all()

    def test_all_nd_gets_midpoint(self):
        vals = np.full((3, 4), np.nan)
        res = bar_grid(4, height=3, row=1)
        out, stats = interpolate(VectorField(vals), res, 1, DI)
        assert stats.passes == 0
        assert (out.angles[1, :] == DI.midpoint).all()
        assert np.isnan(out.angles[0, :]).all()

    def test_stalled_pass_widens_window_uncounted(self):
        vals = np.full((1, 10), np.nan)
        vals[0, 0] = 0.3
        res = np.zeros((1, 10), dtype=np.uint8)
        res[0, 0] = res[0, 9] = 1
        out, stats = interpolate(VectorField(vals), BinaryGrid(res), 1, DI)
        assert out.angles[0, 9] == pytest.approx(0.3, abs=1e-12)
        assert stats.passes == 1
        assert stats.final_radius == 9

    def test_fill_is_restricted_to_reservoir(self):
        vals = np.full((3, 3), np.nan)
        vals[1, 0] = 0.1
        res = bar_grid(3, height=3, row=1)
        out, _ = interpolate(VectorField(vals), res, 1, DI)
        assert out.support().same_cells(res)

    def test_defined_outside_reservoir_rejected(self):
        vals = np.full((2, 2), np.nan)
        vals[0, 0] = 0.5
        res = BinaryGrid.zeros(2, 2)
        with pytest.raises(ValidationError, match="outside the reservoir"):
            interpolate(VectorField(vals), res, 1, DI)

    def test_shape_mismatch_rejected(self):
        vals = np.full((2, 3), np.nan)
        with pytest.raises(ValidationError, match="dimensions"):
            interpolate(VectorField(vals), BinaryGrid.zeros(2, 2), 1, DI)


class TestBuildTvf:
    def test_straight_channel_exact_zero(self):
        g = bar_grid(12, height=12, row=5)
        cfg = SimulationConfig(di=DI, erosion_stop=FixedK(1), template_w=2,
                               template_h=2, seed_rows_r=2, seed_cols_t=2)
        field, stats = build_tvf(g, cfg)
        assert field.support().same_cells(g)
        assert (field.angles[5, :] == 0.0).all()
        assert stats.erosions == 1
        assert 0.0 < stats.coverage <= 1.0

    def test_support_matches_training(self, mini_grid, mini_tvf):
        field, _ = mini_tvf
        assert field.support().same_cells(mini_grid)

    def test_values_closed_in_interval(self, mini_tvf, mini_cfg):
        field, _ = mini_tvf
        defined = field.angles[field.defined_mask]
        for a in defined:
            assert mini_cfg.di.contains(float(a), tol=1e-9)

    def test_deterministic(self, mini_grid, mini_cfg, mini_tvf):
        field, _ = mini_tvf
        again, _ = build_tvf(mini_grid, mini_cfg)
        assert np.array_equal(field.angles, again.angles, equal_nan=True)

    def test_explicit_seed_overrides_config(self, mini_grid, mini_cfg, mini_tvf):
        field, _ = mini_tvf
        same, _ = build_tvf(mini_grid, mini_cfg, seed=mini_cfg.rng_seed)
        assert np.array_equal(field.angles, same.angles, equal_nan=True)

    def test_empty_training_rejected(self, mini_cfg):
        with pytest.raises(EmptyInputError):
            build_tvf(BinaryGrid.zeros(8, 8), mini_cfg)
