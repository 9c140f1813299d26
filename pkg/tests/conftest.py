import numpy as np
import pytest

from vecsim.config import FixedK, SimulationConfig
from vecsim.angles import DirectionalInterval
from vecsim.grids import BinaryGrid
from vecsim.io import read_pgm
from vecsim.config import parse_config
from vecsim.tvf import build_tvf

DEMO_IMAGE = "data/demo_tree.pgm"
DEMO_CONFIG = "data/demo_config.txt"


@pytest.fixture(scope="session")
def demo_grid() -> BinaryGrid:
    return read_pgm(DEMO_IMAGE)


@pytest.fixture(scope="session")
def demo_cfg() -> SimulationConfig:
    return parse_config(DEMO_CONFIG)


@pytest.fixture(scope="session")
def demo_tvf(demo_grid, demo_cfg):
    """(field, stats) for the bundled image; built once per session."""
    return build_tvf(demo_grid, demo_cfg)


def make_mini_grid() -> BinaryGrid:
    """30x30 channel with one branch; background margin on the right.

    The trunk spans rows 13..15 for x <= 20; a thinner branch leaves at
    x = 10 and climbs at 45 degrees. All local directions stay inside
    [-0.8, 0.8] and the last 7 columns are sand free.
    """
    v = np.zeros((30, 30), dtype=np.uint8)
    v[13:16, 0:21] = 1
    for i in range(9):
        x = 10 + i
        y = 15 + i
        v[y, x:x + 2] = 1
    return BinaryGrid(v)


def make_mini_cfg(**overrides) -> SimulationConfig:
    kwargs = dict(
        di=DirectionalInterval(-0.8, 0.8),
        erosion_stop=FixedK(1),
        template_w=2,
        template_h=2,
        seed_rows_r=3,
        seed_cols_t=3,
        accept_a=0.02,
        rng_seed=7,
    )
    kwargs.update(overrides)
    return SimulationConfig(**kwargs)


@pytest.fixture(scope="session")
def mini_grid() -> BinaryGrid:
    return make_mini_grid()


@pytest.fixture(scope="session")
def mini_cfg() -> SimulationConfig:
    return make_mini_cfg()


@pytest.fixture(scope="session")
def mini_tvf(mini_grid, mini_cfg):
    return build_tvf(mini_grid, mini_cfg)
