#!/usr/bin/env python3
"""Generate the bundled synthetic training image.

A single tree of channels grows from the left edge toward the right:
a thick trunk that tapers, spawning thinner branches that diverge and
taper further. Every growth direction stays well inside [-0.8, 0.8],
the directional interval shipped in the demo config, and the rightmost
columns are kept clear of sand so every sand column admits a full
pattern template.

The image is deterministic for a given seed; the repository copy was
produced with the defaults.
"""
from __future__ import annotations

import argparse
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from vecsim.grids import BinaryGrid
from vecsim.io import write_pgm

MAX_ANGLE = 0.65  # growth directions stay inside the demo interval [-0.8, 0.8]


@dataclass
class Branch:
    x: float
    y: float
    angle: float
    radius: float
    depth: int


def _stamp(canvas: np.ndarray, x: float, y: float, radius: float) -> None:
    h, w = canvas.shape
    r = int(math.ceil(radius))
    cx, cy = int(round(x)), int(round(y))
    y0, y1 = max(0, cy - r), min(h, cy + r + 1)
    x0, x1 = max(0, cx - r), min(w, cx + r + 1)
    yy, xx = np.mgrid[y0:y1, x0:x1]
    canvas[y0:y1, x0:x1] |= (xx - x) ** 2 + (yy - y) ** 2 <= radius * radius


def grow_tree(size: int, seed: int, margin: int) -> BinaryGrid:
    """Grow one connected channel tree on a size x size canvas."""
    canvas = np.zeros((size, size), dtype=bool)
    rng = np.random.default_rng(seed)
    queue = deque([Branch(x=0.0, y=size / 2.0, angle=0.0, radius=3.6, depth=0)])
    spacing = 20.0  # steps between branch spawns on one segment
    while queue:
        b = queue.popleft()
        since_spawn = 0.0
        sign = 1.0 if rng.random() < 0.5 else -1.0
        while b.x < size - margin - b.radius - 1.0 and b.radius >= 0.9:
            _stamp(canvas, b.x, b.y, b.radius)
            b.angle = float(np.clip(b.angle + rng.normal(0.0, 0.055),
                                    -MAX_ANGLE, MAX_ANGLE))
            # steer back toward the horizontal band so channels stay on canvas
            if b.y < 0.15 * size:
                b.angle = min(b.angle + 0.05, MAX_ANGLE)
            elif b.y > 0.85 * size:
                b.angle = max(b.angle - 0.05, -MAX_ANGLE)
            b.x += math.cos(b.angle)
            b.y += math.sin(b.angle)
            b.radius *= 0.9975
            since_spawn += 1.0
            if since_spawn >= spacing and b.depth < 3 and b.radius >= 1.5:
                since_spawn = 0.0
                spread = rng.uniform(0.3, 0.55)
                child_angle = float(np.clip(b.angle + sign * spread,
                                            -MAX_ANGLE, MAX_ANGLE))
                queue.append(Branch(x=b.x, y=b.y, angle=child_angle,
                                    radius=b.radius * 0.72, depth=b.depth + 1))
                sign = -sign
    return BinaryGrid(canvas.astype(np.uint8))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=183)
    parser.add_argument("--seed", type=int, default=20260813)
    parser.add_argument("--margin", type=int, default=12,
                        help="sand-free columns on the right edge")
    parser.add_argument("--out", default="data/demo_tree.pgm")
    args = parser.parse_args()
    grid = grow_tree(args.size, args.seed, args.margin)
    write_pgm(grid, args.out)
    print(f"wrote {args.out}: {grid.width}x{grid.height}, "
          f"sand fraction {grid.sand_fraction:.3f}")


if __name__ == "__main__":
    main()
