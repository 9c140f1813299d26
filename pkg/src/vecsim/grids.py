"""Lattice value types: binary facies grids and direction fields.

Row 0 of every lattice is the BOTTOM image row. Coordinates are (x, y)
with x the column and y the row, so array indexing is values[y, x].
Direction fields use NaN as the in-memory encoding of ND (no direction);
the on-disk format spells it out as a literal token instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class BinaryGrid:
    """2D facies lattice, 1 = sand/reservoir, 0 = background."""

    values: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.uint8)
        if v.ndim != 2 or v.size == 0:
            raise ValidationError("grid must be a non-empty 2D lattice")
        if not np.isin(v, (0, 1)).all():
            raise ValidationError("grid cells must be 0 or 1")
        object.__setattr__(self, "values", v)

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def sand_count(self) -> int:
        return int(self.values.sum())

    @property
    def sand_fraction(self) -> float:
        return self.sand_count / self.values.size

    def same_cells(self, other: "BinaryGrid") -> bool:
        return self.values.shape == other.values.shape and bool(
            (self.values == other.values).all()
        )

    @staticmethod
    def zeros(width: int, height: int) -> "BinaryGrid":
        return BinaryGrid(np.zeros((height, width), dtype=np.uint8))


@dataclass(frozen=True)
class VectorField:
    """Per-cell direction lattice; NaN entries mean ND (no direction).

    Defined entries are finite radians in [-pi, pi]. The direction norm
    is implicitly one everywhere a direction is defined.
    """

    angles: np.ndarray  # float64, shape (height, width)

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64)
        if a.ndim != 2 or a.size == 0:
            raise ValidationError("field must be a non-empty 2D lattice")
        defined = a[~np.isnan(a)]
        if np.isinf(defined).any():
            raise ValidationError("field angles must be finite or ND")
        if defined.size and (defined.min() < -math.pi or defined.max() > math.pi):
            raise ValidationError("field angles must lie in [-pi, pi]")
        object.__setattr__(self, "angles", a)

    @property
    def width(self) -> int:
        return self.angles.shape[1]

    @property
    def height(self) -> int:
        return self.angles.shape[0]

    @property
    def defined_mask(self) -> np.ndarray:
        return ~np.isnan(self.angles)

    def support(self) -> BinaryGrid:
        """Facies grid with sand exactly where a direction is defined."""
        return BinaryGrid(self.defined_mask.astype(np.uint8))

    def allclose(self, other: "VectorField", atol: float = 0.0) -> bool:
        """Equality with NaN == NaN; atol bounds the angle difference."""
        if self.angles.shape != other.angles.shape:
            return False
        a, b = self.angles, other.angles
        na, nb = np.isnan(a), np.isnan(b)
        if not (na == nb).all():
            return False
        d = a[~na] - b[~nb]
        return bool((np.abs(d) <= atol).all()) if d.size else True

    @staticmethod
    def all_nd(width: int, height: int) -> "VectorField":
        return VectorField(np.full((height, width), np.nan))
