"""Vector-field based stochastic simulation of binary channel systems.

The pipeline: a binary training image is decomposed into contour shells
by repeated erosion, directions are estimated along the contours and
interpolated into a training vector field, and new realizations are
drawn by raster-scan pattern matching against that field.
"""
from .angles import DirectionalInterval
from .config import (
    FixedK,
    MaxComponents,
    ResidualFraction,
    SimulationConfig,
    config_digest,
    parse_config,
)
from .ensemble import EtypeMap, connectivity_report, etype, variability
from .errors import (
    EmptyInputError,
    FormatError,
    TruncationError,
    ValidationError,
    VecsimError,
)
from .grids import BinaryGrid, VectorField
from .io import read_field, read_pgm, write_field, write_pgm, write_pgm_gray
from .morphology import (
    CROSS,
    SQUARE,
    DecompositionSequence,
    StructuringElement,
    connected_components,
    contour,
    decompose,
    erode,
)
from .patterns import (
    Pattern,
    PatternBase,
    Template,
    angle_diff,
    dist,
    dist_loc,
    dist_tvf,
    extract_patterns,
    make_template,
)
from .rng import GENERATOR_ID, realization_seed32, walk_rng
from .simulate import (
    Realization,
    SimGrid,
    data_event,
    init_grid,
    select_pattern,
    simulate,
    to_binary,
)
from .tvf import (
    WalkState,
    build_contour_field,
    build_tvf,
    interpolate,
    secant_angle,
    vector_at,
    walk_step,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryGrid",
    "CROSS",
    "DecompositionSequence",
    "DirectionalInterval",
    "EmptyInputError",
    "EtypeMap",
    "FixedK",
    "FormatError",
    "GENERATOR_ID",
    "MaxComponents",
    "Pattern",
    "PatternBase",
    "Realization",
    "ResidualFraction",
    "SQUARE",
    "SimGrid",
    "SimulationConfig",
    "StructuringElement",
    "Template",
    "TruncationError",
    "ValidationError",
    "VecsimError",
    "VectorField",
    "WalkState",
    "angle_diff",
    "build_contour_field",
    "build_tvf",
    "config_digest",
    "connected_components",
    "connectivity_report",
    "contour",
    "data_event",
    "decompose",
    "dist",
    "dist_loc",
    "dist_tvf",
    "erode",
    "etype",
    "extract_patterns",
    "init_grid",
    "interpolate",
    "make_template",
    "parse_config",
    "read_field",
    "read_pgm",
    "realization_seed32",
    "secant_angle",
    "select_pattern",
    "simulate",
    "to_binary",
    "variability",
    "vector_at",
    "walk_rng",
    "walk_step",
    "write_field",
    "write_pgm",
    "write_pgm_gray",
]
