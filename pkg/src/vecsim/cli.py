"""Command line front end.

Subcommands mirror the pipeline stages: decompose, build-tvf, simulate,
etype, stats. Every invocation prints the config digest it ran under
(or "(none)" for config-free commands), outputs are written atomically,
and the master seed resolves as VECSIM_SEED over --rng-seed over the
config file value.

Exit codes: 0 success, 1 bad values or contract violations, 2 broken
or missing input files.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import SimulationConfig, config_digest, parse_config
from .ensemble import connectivity_report, etype
from .errors import FormatError, ValidationError
from .grids import VectorField
from .io import _atomic_write_bytes, read_field, read_pgm, write_field, write_pgm, write_pgm_gray
from .morphology import SELEMS, decompose
from .patterns import extract_patterns, make_template
from .rng import GENERATOR_ID
from .simulate import simulate
from .tvf import build_tvf


def _resolved_seed(cfg: SimulationConfig, args) -> SimulationConfig:
    seed = cfg.rng_seed
    if getattr(args, "rng_seed", None) is not None:
        seed = args.rng_seed
    env = os.environ.get("VECSIM_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise ValidationError(f"VECSIM_SEED must be an integer, got {env!r}") from None
    return cfg.with_seed(seed)


def _load_config(args) -> SimulationConfig:
    cfg = parse_config(args.config)
    cfg = _resolved_seed(cfg, args)
    print(f"config digest: {config_digest(cfg)}")
    return cfg


def _cmd_decompose(args) -> int:
    cfg = _load_config(args)
    grid = read_pgm(args.image)
    seq = decompose(grid, SELEMS[cfg.selem], cfg.erosion_stop)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, t in enumerate(seq.erosions):
        write_pgm(t, out / f"T_{i:02d}.pgm")
    for i, c in enumerate(seq.contours):
        write_pgm(c, out / f"C_{i:02d}.pgm")
    print(f"erosions applied: {seq.k}")
    print(f"residual sand cells: {seq.residual.sand_count}")
    return 0


def _cmd_build_tvf(args) -> int:
    cfg = _load_config(args)
    grid = read_pgm(args.image)
    field, stats = build_tvf(grid, cfg)
    write_field(field, args.out)
    print(f"walk coverage: {100.0 * stats.coverage:.1f}%")
    print(f"interpolation passes: {stats.passes}")
    print(f"erosions applied: {stats.erosions}")
    return 0


def _simulate_one(tvf_angles: np.ndarray, cfg: SimulationConfig, index: int,
                  out_dir: str) -> dict:
    re = simulate(VectorField(tvf_angles), cfg, index)
    pgm = f"real_{index:04d}.pgm"
    vecf = f"real_{index:04d}.vecf"
    write_pgm(re.facies, Path(out_dir) / pgm)
    write_field(re.field, Path(out_dir) / vecf)
    return {"index": index, "seed32": re.provenance.seed32, "pgm": pgm, "vecf": vecf}


def _cmd_simulate(args) -> int:
    cfg = _load_config(args)
    field = read_field(args.tvf)
    if args.count < 1:
        raise ValidationError(f"--count must be >= 1, got {args.count}")
    if args.jobs < 1:
        raise ValidationError(f"--jobs must be >= 1, got {args.jobs}")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    indices = range(args.count)
    if args.jobs == 1:
        rows = [_simulate_one(field.angles, cfg, i, str(out)) for i in indices]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_simulate_one, [field.angles] * args.count,
                                 [cfg] * args.count, indices, [str(out)] * args.count))
    manifest = {
        "generator": GENERATOR_ID,
        "config_digest": config_digest(cfg),
        "master_seed": cfg.rng_seed,
        "tvf": {
            "path": str(args.tvf),
            "sha256": hashlib.sha256(Path(args.tvf).read_bytes()).hexdigest(),
        },
        "count": args.count,
        "realizations": rows,
    }
    _atomic_write_bytes(out / "manifest.json",
                        (json.dumps(manifest, indent=2) + "\n").encode("ascii"))
    print(f"wrote {args.count} realizations to {out}")
    return 0


def _realization_paths(in_dir: str) -> list[Path]:
    paths = sorted(Path(in_dir).glob("real_*.pgm"))
    if not paths:
        raise ValidationError(f"no real_*.pgm files in {in_dir}")
    return paths


def _cmd_etype(args) -> int:
    print("config digest: (none)")
    grids = [read_pgm(p) for p in _realization_paths(args.in_dir)]
    em = etype(grids)
    pixels = np.rint(255.0 * (1.0 - em.values)).astype(np.uint8)
    write_pgm_gray(pixels, args.out)
    print(f"averaged {em.count} realizations")
    return 0


def _cmd_stats(args) -> int:
    if (args.tvf is None) == (args.in_dir is None):
        raise ValidationError("give exactly one of --tvf or --in-dir")
    if args.tvf is not None:
        if args.config is None:
            raise ValidationError("--tvf mode needs --config for the template extents")
        cfg = _load_config(args)
        field = read_field(args.tvf)
        base = extract_patterns(field, make_template(cfg.template_w, cfg.template_h), cfg.di)
        print(f"pattern base size: {len(base)}")
        print(f"nd fraction: {base.nd_fraction:.4f}")
        return 0
    print("config digest: (none)")
    if args.training is None or args.out is None:
        raise ValidationError("--in-dir mode needs --training and --out")
    paths = _realization_paths(args.in_dir)
    grids = [read_pgm(p) for p in paths]
    report = connectivity_report(grids, read_pgm(args.training))
    buf = _io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["realization", "components", "largest_fraction", "sand_fraction"])
    for path, row in zip(paths, report.rows):
        writer.writerow([path.stem, row.components,
                         f"{row.largest_fraction:.6f}", f"{row.sand_fraction:.6f}"])
    writer.writerow(["training", report.training.components,
                     f"{report.training.largest_fraction:.6f}",
                     f"{report.training.sand_fraction:.6f}"])
    _atomic_write_bytes(args.out, buf.getvalue().encode("ascii"))
    print(f"median component ratio: {report.median_component_ratio:.3f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    from . import __version__

    parser = argparse.ArgumentParser(
        prog="vecsim",
        description="Vector-field based stochastic simulation of binary channel systems.",
    )
    parser.add_argument("--version", action="version",
                        version=f"vecsim {__version__} (rng {GENERATOR_ID})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="erode a training image into contour shells")
    p.add_argument("--image", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("build-tvf", help="build the training vector field")
    p.add_argument("--image", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rng-seed", type=int)
    p.set_defaults(func=_cmd_build_tvf)

    p = sub.add_parser("simulate", help="draw realizations from a vector field")
    p.add_argument("--tvf", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--rng-seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("etype", help="average an ensemble into a grayscale map")
    p.add_argument("--in-dir", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_etype)

    p = sub.add_parser("stats", help="pattern-base or ensemble statistics")
    p.add_argument("--tvf")
    p.add_argument("--config")
    p.add_argument("--rng-seed", type=int)
    p.add_argument("--in-dir")
    p.add_argument("--training")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
