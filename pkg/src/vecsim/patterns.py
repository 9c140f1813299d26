"""L-shaped templates, the pattern base, and pattern distances.

Pattern values are stored as directional-interval representatives, so
angle differences are plain float subtractions everywhere downstream.
Center values keep their principal form because they are pasted
verbatim into realizations. Each pattern also records the (x, y)
anchor it was cut from; the location term of the combined distance
compares anchors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import DirectionalInterval, representative_array
from .errors import ValidationError
from .grids import VectorField

_UNIT = "unit_scaled"
_RAW = "paper_raw"


def _check_normalization(normalization: str) -> None:
    if normalization not in (_UNIT, _RAW):
        raise ValidationError(f"unknown normalization {normalization!r}")


@dataclass(frozen=True)
class Template:
    """Causal L-form: the rows below the center plus the cells to its left.

    Offsets are ordered row by row from the lowest, then the same-row
    arm; every offset precedes the center in a bottom-up, left-to-right
    scan. The center (0, 0) is the paste target and is not an offset.
    """

    w: int
    h: int
    offsets: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.offsets)


def make_template(w: int, h: int) -> Template:
    if w < 1 or h < 1:
        raise ValidationError(f"template extents must be >= 1, got w={w}, h={h}")
    offsets = [(dx, dy) for dy in range(-h, 0) for dx in range(-w, w + 1)]
    offsets += [(dx, 0) for dx in range(-w, 0)]
    return Template(w=w, h=h, offsets=tuple(offsets))


@dataclass(frozen=True)
class Pattern:
    """One template-shaped cutout: representative values, principal center."""

    values: np.ndarray
    center_value: float
    anchor: tuple[int, int]


@dataclass(frozen=True)
class PatternBase:
    """All fully in-bounds cutouts of a field, in scan order of anchors."""

    template: Template
    field_dims: tuple[int, int]
    rep_values: np.ndarray  # (patterns, offsets), NaN = ND
    center_principal: np.ndarray  # (patterns,)
    center_rep: np.ndarray  # (patterns,)
    anchors_x: np.ndarray  # (patterns,) int64
    anchors_y: np.ndarray  # (patterns,) int64

    def __len__(self) -> int:
        return self.rep_values.shape[0]

    def pattern(self, i: int) -> Pattern:
        return Pattern(
            values=self.rep_values[i],
            center_value=float(self.center_principal[i]),
            anchor=(int(self.anchors_x[i]), int(self.anchors_y[i])),
        )

    @property
    def nd_fraction(self) -> float:
        """Fraction of ND entries among all stored pattern values."""
        return float(np.isnan(self.rep_values).mean())


def extract_patterns(field: VectorField, template: Template, di: DirectionalInterval) -> PatternBase:
    """Cut one pattern per anchor admitting the full template in bounds.

    Anchors run bottom-up, left-to-right: x in [w, width-1-w] and
    y in [h, height-1], giving (width-2w)*(height-h) patterns.
    """
    w, h = template.w, template.h
    width, height = field.width, field.height
    if width < 2 * w + 1 or height < h + 1:
        raise ValidationError(
            f"field {width}x{height} smaller than template bounding box "
            f"{2 * w + 1}x{h + 1}"
        )
    rep_field = representative_array(field.angles, di)
    ax, ay = np.meshgrid(np.arange(w, width - w), np.arange(h, height))
    ax = ax.ravel()
    ay = ay.ravel()
    rep_values = np.empty((ax.size, template.size))
    for j, (dx, dy) in enumerate(template.offsets):
        rep_values[:, j] = rep_field[ay + dy, ax + dx]
    return PatternBase(
        template=template,
        field_dims=(width, height),
        rep_values=rep_values,
        center_principal=field.angles[ay, ax],
        center_rep=rep_field[ay, ax],
        anchors_x=ax.astype(np.int64),
        anchors_y=ay.astype(np.int64),
    )


def angle_diff(u: float, v: float, b: float, di: DirectionalInterval | None = None) -> float:
    """Signed difference under the ND case rule; NaN encodes ND.

    Both ND gives 0, a single ND gives pi/b, two defined values give
    plain subtraction. Values are assumed to be interval representatives
    already; pass di to map principal inputs first.
    """
    if not b > 0.0:
        raise ValidationError(f"b must be > 0, got {b}")
    u_nd = math.isnan(u)
    v_nd = math.isnan(v)
    if u_nd and v_nd:
        return 0.0
    if u_nd or v_nd:
        return math.pi / b
    if di is not None:
        u = di.representative(u)
        v = di.representative(v)
    return u - v


def dist_tvf(a: Pattern, b: Pattern, b_param: float, normalization: str) -> float:
    """Sum of squared per-offset angle differences between two patterns.

    unit_scaled divides by size*(pi/b)^2 and the result lies in [0, 1]:
    pi/b round-trips an ulp below the interval diameter that bounds the
    representative differences, so the quotient can overshoot 1 by
    rounding and is clamped. Exactly symmetric: the squared case-rule
    matrix is unchanged under swapping the arguments.
    """
    _check_normalization(normalization)
    if not b_param > 0.0:
        raise ValidationError(f"b must be > 0, got {b_param}")
    ua, ub = a.values, b.values
    if ua.shape != ub.shape:
        raise ValidationError("patterns come from different templates")
    na, nb = np.isnan(ua), np.isnan(ub)
    pen = math.pi / b_param
    diff = np.where(na & nb, 0.0, np.where(na ^ nb, pen, np.where(na | nb, 0.0, ua - ub)))
    raw = float(diff @ diff)
    if normalization == _UNIT:
        return min(raw / (ua.size * pen * pen), 1.0)
    return raw


def dist_loc(p: tuple[int, int], q: tuple[int, int], normalization: str,
             field_dims: tuple[int, int]) -> float:
    """Squared Euclidean anchor distance; unit_scaled divides by the
    squared grid diagonal so opposite corners are at distance 1."""
    _check_normalization(normalization)
    raw = float((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)
    if normalization == _UNIT:
        width, height = field_dims
        return raw / ((width - 1) ** 2 + (height - 1) ** 2)
    return raw


def dist(a: Pattern, b: Pattern, beta: float, b_param: float, normalization: str,
         field_dims: tuple[int, int]) -> float:
    """Convex combination beta*dist_tvf + (1-beta)*dist_loc.

    beta=0 and beta=1 reproduce the pure terms bit-exactly.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValidationError(f"beta must be in [0, 1], got {beta}")
    if beta == 0.0:
        return dist_loc(a.anchor, b.anchor, normalization, field_dims)
    if beta == 1.0:
        return dist_tvf(a, b, b_param, normalization)
    return (beta * dist_tvf(a, b, b_param, normalization)
            + (1.0 - beta) * dist_loc(a.anchor, b.anchor, normalization, field_dims))
