"""File formats: PGM images (P2/P5 in, P5 out) and VECF direction fields.

Conventions, applied on both read and write so they cancel out:
  * PGM payload rows are stored top-down; grids keep row 0 at the bottom,
    so rows are flipped at the file boundary.
  * pixel < 128 is sand (dark channels on light background), >= 128 is
    background. Writing emits 0 for sand and 255 for background.

The VECF field format is a plain-text lattice:

    VECF <width> <height>
    <height> lines, BOTTOM row first, of <width> tokens each;
    a token is a decimal radian value or the literal "ND".

All writers go through an atomic temp-file + rename step.
"""
from __future__ import annotations

import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import FormatError, TruncationError
from .grids import BinaryGrid, VectorField

_WS = b" \t\r\n\x0b\x0c"


def _atomic_write_bytes(path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _HeaderScanner:
    """Whitespace/comment-aware token scanner that tracks byte offsets."""

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def skip_separators(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = self.data[self.pos : self.pos + 1]
            if c in (b"#",):
                nl = data.find(b"\n", self.pos)
                self.pos = n if nl < 0 else nl + 1
            elif c and c in _WS:
                self.pos += 1
            else:
                return

    def next_uint(self, what: str) -> int:
        self.skip_separators()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            raise FormatError(f"expected {what} in header", offset=start)
        return int(self.data[start : self.pos])


def read_pgm(path) -> BinaryGrid:
    """Read a P2 or P5 PGM file (maxval <= 255) as a binary facies grid."""
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a P2/P5 PGM (magic {magic!r})", offset=0)
    sc = _HeaderScanner(data, 2)
    width = sc.next_uint("width")
    height = sc.next_uint("height")
    maxval = sc.next_uint("maxval")
    if width < 1 or height < 1:
        raise FormatError(f"bad dimensions {width}x{height}", offset=2)
    if maxval < 1 or maxval > 255:
        raise FormatError(f"maxval {maxval} out of range 1..255", offset=sc.pos)
    n = width * height

    if magic == b"P5":
        # single whitespace byte terminates the header before raw pixels
        if sc.pos >= len(data) or data[sc.pos : sc.pos + 1] not in _WS:
            raise FormatError("missing whitespace after maxval", offset=sc.pos)
        start = sc.pos + 1
        if len(data) - start < n:
            raise TruncationError(
                f"payload has {len(data) - start} of {n} bytes", offset=len(data)
            )
        pixels = np.frombuffer(data[start : start + n], dtype=np.uint8)
    else:
        values = []
        for _ in range(n):
            sc.skip_separators()
            if sc.pos >= len(data):
                raise TruncationError(
                    f"payload has {len(values)} of {n} samples", offset=len(data)
                )
            values.append(sc.next_uint("pixel value"))
        pixels = np.asarray(values, dtype=np.int64)

    facies = (pixels.reshape(height, width) < 128).astype(np.uint8)
    return BinaryGrid(np.flipud(facies))


def write_pgm(grid: BinaryGrid, path) -> None:
    """Write a binary facies grid as P5; sand -> 0, background -> 255."""
    pixels = np.where(np.flipud(grid.values) == 1, 0, 255).astype(np.uint8)
    header = f"P5\n{grid.width} {grid.height}\n255\n".encode("ascii")
    _atomic_write_bytes(path, header + pixels.tobytes())


def write_pgm_gray(values: np.ndarray, path) -> None:
    """Write a uint8 grayscale lattice (row 0 = bottom) as P5."""
    v = np.asarray(values, dtype=np.uint8)
    header = f"P5\n{v.shape[1]} {v.shape[0]}\n255\n".encode("ascii")
    _atomic_write_bytes(path, header + np.flipud(v).tobytes())


def read_field(path) -> VectorField:
    """Read a VECF direction field."""
    text = Path(path).read_text("ascii")
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty VECF file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "VECF":
        raise FormatError(f"bad VECF header {lines[0]!r}")
    try:
        width, height = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError(f"bad VECF dimensions {lines[0]!r}") from None
    if width < 1 or height < 1:
        raise FormatError(f"bad VECF dimensions {width}x{height}")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != height:
        raise FormatError(f"expected {height} rows, found {len(body)}")
    angles = np.full((height, width), np.nan)
    for y, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != width:
            raise FormatError(f"row {y}: expected {width} tokens, found {len(tokens)}")
        for x, tok in enumerate(tokens):
            if tok == "ND":
                continue
            try:
                v = float(tok)
            except ValueError:
                raise FormatError(f"row {y}: bad token {tok!r}") from None
            if not math.isfinite(v):
                raise FormatError(f"row {y}: non-finite value {tok!r}")
            if not -math.pi <= v <= math.pi:
                raise FormatError(f"row {y}: angle {tok!r} outside [-pi, pi]")
            angles[y, x] = v
    return VectorField(angles)


def write_field(field: VectorField, path) -> None:
    """Write a VECF direction field; 17 significant digits round-trip
    double precision exactly, so read(write(f)) == f."""
    lines = [f"VECF {field.width} {field.height}"]
    for row in field.angles:
        lines.append(" ".join("ND" if np.isnan(v) else format(v, ".17g") for v in row))
    _atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))
