"""Run configuration: tunables, validation, file parsing and digests.

Config files are plain ``key = value`` lines; ``#`` starts a comment.
Unknown or duplicate keys are rejected. The erosion stop criterion is
picked by giving exactly one of ``fixed_k``, ``residual_fraction`` or
``max_components``.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .angles import DirectionalInterval
from .errors import ValidationError

NORMALIZATIONS = ("paper_raw", "unit_scaled")
SELEM_KINDS = ("cross", "square")


@dataclass(frozen=True)
class FixedK:
    """Stop after exactly k erosions (earlier if the residual empties)."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"fixed_k must be >= 0, got {self.k}")


@dataclass(frozen=True)
class ResidualFraction:
    """Stop before the erosion that would drop the residual below rho."""

    rho: float

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValidationError(f"residual_fraction must be in (0, 1), got {self.rho}")


@dataclass(frozen=True)
class MaxComponents:
    """Stop before the erosion that would exceed this component count."""

    limit: int

    def __post_init__(self):
        if self.limit < 1:
            raise ValidationError(f"max_components must be >= 1, got {self.limit}")


ErosionStop = FixedK | ResidualFraction | MaxComponents


@dataclass(frozen=True)
class SimulationConfig:
    """All tunables of the pipeline; validated on construction.

    ``b_param`` defaults to pi / di.diameter, making the ND-mismatch
    penalty equal to the largest possible difference of two defined
    directions. Seed extents default to the template extents, the
    smallest values that keep the first data event fully informed.
    """

    di: DirectionalInterval
    step_n: int = 1
    step_m: int = 3
    erosion_stop: ErosionStop = field(default_factory=lambda: ResidualFraction(0.1))
    interp_radius: int = 1
    beta: float = 0.5
    accept_a: float = 0.01
    b_param: float | None = None
    seed_rows_r: int | None = None
    seed_cols_t: int | None = None
    template_w: int = 5
    template_h: int = 5
    rng_seed: int = 0
    normalization: str = "unit_scaled"
    selem: str = "cross"

    def __post_init__(self):
        if self.b_param is None:
            object.__setattr__(self, "b_param", math.pi / self.di.diameter)
        if self.seed_rows_r is None:
            object.__setattr__(self, "seed_rows_r", self.template_h)
        if self.seed_cols_t is None:
            object.__setattr__(self, "seed_cols_t", self.template_w)
        for key in ("step_n", "step_m"):
            if getattr(self, key) < 1:
                raise ValidationError(f"{key} must be >= 1, got {getattr(self, key)}")
        if self.step_n == self.step_m:
            raise ValidationError("step_n and step_m must differ")
        if self.interp_radius < 1:
            raise ValidationError(f"interp_radius must be >= 1, got {self.interp_radius}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValidationError(f"beta must be in [0, 1], got {self.beta}")
        if self.accept_a < 0.0:
            raise ValidationError(f"accept_a must be >= 0, got {self.accept_a}")
        if not self.b_param > 0.0:
            raise ValidationError(f"b_param must be > 0, got {self.b_param}")
        for key in ("template_w", "template_h"):
            if getattr(self, key) < 1:
                raise ValidationError(f"{key} must be >= 1, got {getattr(self, key)}")
        if self.seed_rows_r < self.template_h:
            raise ValidationError(
                f"seed_rows_r must be >= template_h ({self.template_h}), got {self.seed_rows_r}"
            )
        if self.seed_cols_t < self.template_w:
            raise ValidationError(
                f"seed_cols_t must be >= template_w ({self.template_w}), got {self.seed_cols_t}"
            )
        if not 0 <= self.rng_seed < 2**64:
            raise ValidationError(f"rng_seed must be a 64-bit unsigned value, got {self.rng_seed}")
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(f"normalization must be one of {NORMALIZATIONS}")
        if self.selem not in SELEM_KINDS:
            raise ValidationError(f"selem must be one of {SELEM_KINDS}")

    def with_seed(self, rng_seed: int) -> "SimulationConfig":
        return replace(self, rng_seed=rng_seed)


_INT_KEYS = frozenset(
    ["step_n", "step_m", "interp_radius", "seed_rows_r", "seed_cols_t",
     "template_w", "template_h", "rng_seed", "fixed_k", "max_components"]
)
_FLOAT_KEYS = frozenset(
    ["di_min", "di_max", "beta", "accept_a", "b_param", "residual_fraction"]
)
_STR_KEYS = frozenset(["normalization", "selem"])
_STOP_KEYS = ("fixed_k", "residual_fraction", "max_components")


def parse_config(path, default_di: DirectionalInterval | None = None) -> SimulationConfig:
    """Parse a ``key = value`` config file into a SimulationConfig.

    ``default_di`` supplies the directional interval when the file has
    no ``di_min``/``di_max`` entries; the interval must come from one of
    the two sources.
    """
    raw: dict[str, object] = {}
    try:
        text = Path(path).read_text("ascii")
    except UnicodeDecodeError as exc:
        raise ValidationError(f"config must be ascii text: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValidationError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key in raw:
            raise ValidationError(f"duplicate key {key}")
        if key in _INT_KEYS:
            try:
                raw[key] = int(value)
            except ValueError:
                raise ValidationError(f"key {key}: expected integer, got {value!r}") from None
        elif key in _FLOAT_KEYS:
            try:
                raw[key] = float(value)
            except ValueError:
                raise ValidationError(f"key {key}: expected number, got {value!r}") from None
        elif key in _STR_KEYS:
            raw[key] = value
        else:
            raise ValidationError(f"unknown key {key}")

    if ("di_min" in raw) != ("di_max" in raw):
        raise ValidationError("di_min and di_max must be given together")
    if "di_min" in raw:
        di = DirectionalInterval(raw.pop("di_min"), raw.pop("di_max"))
    elif default_di is not None:
        di = default_di
    else:
        raise ValidationError("di_min/di_max missing and no default interval given")

    given_stops = [k for k in _STOP_KEYS if k in raw]
    if len(given_stops) > 1:
        raise ValidationError(f"at most one erosion stop key allowed, got {given_stops}")
    kwargs: dict[str, object] = {}
    if given_stops:
        key = given_stops[0]
        value = raw.pop(key)
        if key == "fixed_k":
            kwargs["erosion_stop"] = FixedK(value)
        elif key == "residual_fraction":
            kwargs["erosion_stop"] = ResidualFraction(value)
        else:
            kwargs["erosion_stop"] = MaxComponents(value)
    kwargs.update(raw)
    return SimulationConfig(di=di, **kwargs)


def config_text(cfg: SimulationConfig) -> str:
    """Canonical ``key = value`` rendering; floats use repr round-tripping."""
    stop = cfg.erosion_stop
    if isinstance(stop, FixedK):
        stop_line = f"fixed_k = {stop.k}"
    elif isinstance(stop, ResidualFraction):
        stop_line = f"residual_fraction = {stop.rho!r}"
    else:
        stop_line = f"max_components = {stop.limit}"
    lines = [
        f"accept_a = {cfg.accept_a!r}",
        f"b_param = {cfg.b_param!r}",
        f"beta = {cfg.beta!r}",
        f"di_max = {cfg.di.theta_max!r}",
        f"di_min = {cfg.di.theta_min!r}",
        stop_line,
        f"interp_radius = {cfg.interp_radius}",
        f"normalization = {cfg.normalization}",
        f"rng_seed = {cfg.rng_seed}",
        f"seed_cols_t = {cfg.seed_cols_t}",
        f"seed_rows_r = {cfg.seed_rows_r}",
        f"selem = {cfg.selem}",
        f"step_m = {cfg.step_m}",
        f"step_n = {cfg.step_n}",
        f"template_h = {cfg.template_h}",
        f"template_w = {cfg.template_w}",
    ]
    return "\n".join(lines) + "\n"


def config_digest(cfg: SimulationConfig) -> str:
    """sha256 over the canonical rendering, as lowercase hex."""
    return hashlib.sha256(config_text(cfg).encode("ascii")).hexdigest()
