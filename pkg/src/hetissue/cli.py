"""Command-line interface.

Subcommands::

    hetissue segment INPUT --out MASK.png [--method he|luminance]
                     [--tiled] [--tile-size N] [--report R.json]
    hetissue gen     --out DIR [--master-seed N]
    hetissue eval    --corpus DIR [--methods he,luminance] [--report R.json]
    hetissue cube    [--step N] [--report R.json]

Every command can emit a JSON report.  Reports have two top-level parts:
``canonical`` (fully determined by inputs and seeds; keys sorted; safe to
diff byte-for-byte) and ``non_canonical`` (paths, wall-clock timings).

Exit codes: 0 success; 1 the eval gate failed (a scene not flagged as an
expected failure missed its success criteria); 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, imageio
from .corpus import (
    CorpusError,
    METHODS,
    evaluate_corpus,
    evaluation_to_canonical,
    write_corpus,
)
from .pipeline import ArrayTileReader, TileGrid, cube_analysis, segment_he, segment_he_tiled, segment_luminance
from .synthgen import SceneValidationError

__all__ = ["main", "run", "build_parser"]

SCHEMA_VERSION = 1


def _emit_report(canonical: dict, non_canonical: dict, path: str | None) -> None:
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "canonical": canonical,
        "non_canonical": non_canonical,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_segment(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.tiled and args.method != "he":
        print("error: --tiled is only available for the he method", file=sys.stderr)
        return 2

    if args.tiled and Path(args.input).suffix.lower() in (".ppm", ".pnm"):
        with imageio.PpmTileReader(args.input) as reader:
            grid = TileGrid.cover(reader.width, reader.height, args.tile_size)
            mask, report = segment_he_tiled(reader, grid)
    elif args.tiled:
        reader = ArrayTileReader(imageio.read_rgb(args.input))
        grid = TileGrid.cover(reader.width, reader.height, args.tile_size)
        mask, report = segment_he_tiled(reader, grid)
    elif args.method == "he":
        mask, report = segment_he(imageio.read_rgb(args.input))
    else:
        mask, report = segment_luminance(imageio.read_rgb(args.input))

    imageio.write_mask_png(args.out, mask.bits)
    height, width = mask.shape
    canonical = {
        "command": "segment",
        "method": args.method,
        "method_id": mask.method.value,
        "tiled": bool(args.tiled),
        "tile_size": args.tile_size if args.tiled else None,
        "width": width,
        "height": height,
        "gamma": report.gamma,
        "degenerate": report.degenerate,
        "tissue_pixel_count": report.tissue_pixel_count,
        "total_pixels": report.total_pixels,
        "tissue_fraction": report.tissue_fraction,
    }
    non_canonical = {
        "input": str(args.input),
        "mask": str(args.out),
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    _emit_report(canonical, non_canonical, args.report)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    entries = write_corpus(args.out, master_seed=args.master_seed)
    print(f"wrote {len(entries)} scenes to {args.out}")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if not methods:
        print("error: --methods must name at least one method", file=sys.stderr)
        return 2
    for m in methods:
        if m not in METHODS:
            print(f"error: unknown method {m!r}; choose from {sorted(METHODS)}", file=sys.stderr)
            return 2
    evaluation = evaluate_corpus(args.corpus, methods=methods)
    canonical = {"command": "eval", **evaluation_to_canonical(evaluation)}
    non_canonical = {
        "corpus": str(args.corpus),
        "elapsed_ms": (time.perf_counter() - t0) * 1000.0,
    }
    _emit_report(canonical, non_canonical, args.report)
    for m in methods:
        agg = canonical["aggregates"][m]
        print(
            f"{m}: {agg['successes']}/{agg['scenes_evaluated']} scenes successful, "
            f"artefacts fully rejected on {agg['artefact_scenes_fully_rejected']}"
            f"/{agg['artefact_scenes']} artefact scenes",
            file=sys.stderr,
        )
    return 0 if evaluation.he_gate_passed else 1


def cmd_cube(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    if args.step < 1 or 255 % args.step != 0:
        print(f"error: --step must be >= 1 and divide 255, got {args.step}", file=sys.stderr)
        return 2
    count, fraction = cube_analysis(args.step)
    lattice = len(range(0, 256, args.step))
    canonical = {
        "command": "cube",
        "step": args.step,
        "lattice_points": lattice**3,
        "count_nonzero": count,
        "fraction": fraction,
    }
    non_canonical = {"elapsed_ms": (time.perf_counter() - t0) * 1000.0}
    _emit_report(canonical, non_canonical, args.report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetissue",
        description="Segment H&E-stained tissue in slide overviews, rejecting pen marks and scan artefacts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment one image and write its tissue mask")
    p.add_argument("input", help="input image (PNG or binary PPM)")
    p.add_argument("--method", choices=sorted(METHODS), default="he")
    p.add_argument("--tiled", action="store_true", help="two-pass tiled streaming execution")
    p.add_argument("--tile-size", type=int, default=512, help="tile edge for --tiled (power of two)")
    p.add_argument("--out", required=True, help="output mask PNG path")
    p.add_argument("--report", default=None, help="JSON report path (default: stdout)")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("gen", help="generate the standard 60-scene synthetic corpus")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output corpus directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eval", help="run methods over a generated corpus and score them")
    p.add_argument("--corpus", required=True, help="corpus directory from `hetissue gen`")
    p.add_argument("--methods", default="he,luminance", help="comma-separated: he, luminance")
    p.add_argument("--report", default=None, help="JSON report path (default: stdout)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cube", help="count RGB-cube colours with a positive representation")
    p.add_argument("--step", type=int, default=1, help="lattice step; must divide 255")
    p.add_argument("--report", default=None, help="JSON report path (default: stdout)")
    p.set_defaults(func=cmd_cube)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (OSError, ValueError, CorpusError, SceneValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
