"""End-to-end segmentation of slide overviews.

Two execution modes produce bit-identical masks:

* whole-image: the overview fits in memory, fields are computed in one shot;
* tiled streaming: two passes over a tile source, holding only one tile,
  the 256-bin histogram, and the output mask at a time.  Pass 1 accumulates
  the histogram tile by tile (histogram merging is order-independent);
  pass 2 re-reads each tile and emits its mask region.

Also here: the luminance-Otsu baseline the stain-difference method is
compared against, and a census of the 24-bit RGB cube counting colours the
representation maps to a positive value.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .representation import luminance, tissue_representation, validate_rgb_image
from .thresholding import (
    Method,
    Threshold,
    TissueMask,
    apply_threshold,
    apply_threshold_below,
    build_histogram,
    merge_histograms,
    otsu_threshold,
)

__all__ = [
    "SegmentationReport",
    "TileGrid",
    "TileReadError",
    "ArrayTileReader",
    "segment_he",
    "segment_luminance",
    "segment_he_tiled",
    "cube_analysis",
]


@dataclass(frozen=True)
class SegmentationReport:
    """Summary of one segmentation run."""

    method: Method
    gamma: float
    tissue_pixel_count: int
    total_pixels: int
    tissue_fraction: float
    elapsed_ms: float
    degenerate: bool


@dataclass(frozen=True)
class TileGrid:
    """Axis-aligned tiles covering an image exactly once.

    ``tile_size`` must be a power of two; edge tiles shrink to fit
    non-divisible dimensions.
    """

    width: int
    height: int
    tile_size: int
    tiles: tuple[tuple[int, int, int, int], ...]

    @classmethod
    def cover(cls, width: int, height: int, tile_size: int = 512) -> "TileGrid":
        if width < 1 or height < 1:
            raise ValueError("image dimensions must be positive")
        if tile_size < 1 or (tile_size & (tile_size - 1)) != 0:
            raise ValueError(f"tile_size must be a power of two, got {tile_size}")
        tiles = []
        for y in range(0, height, tile_size):
            h = min(tile_size, height - y)
            for x in range(0, width, tile_size):
                w = min(tile_size, width - x)
                tiles.append((x, y, w, h))
        return cls(width=width, height=height, tile_size=tile_size, tiles=tuple(tiles))

    def validate_partition(self) -> None:
        """Assert the tiles are disjoint and cover the full raster."""
        seen = np.zeros((self.height, self.width), dtype=np.uint8)
        for x, y, w, h in self.tiles:
            seen[y : y + h, x : x + w] += 1
        if not np.all(seen == 1):
            raise ValueError("tiles do not partition the image")


class TileReadError(IOError):
    """A tile source failed; carries the requested tile rectangle."""

    def __init__(self, tile: tuple[int, int, int, int], cause: BaseException):
        x, y, w, h = tile
        super().__init__(f"failed to read tile (x={x}, y={y}, w={w}, h={h}): {cause}")
        self.tile = tile


class ArrayTileReader:
    """Tile source backed by an in-memory (H, W, 3) uint8 array."""

    def __init__(self, img: np.ndarray):
        self._img = validate_rgb_image(img)

    @property
    def width(self) -> int:
        return self._img.shape[1]

    @property
    def height(self) -> int:
        return self._img.shape[0]

    def read_tile(self, x: int, y: int, w: int, h: int) -> np.ndarray:
        return self._img[y : y + h, x : x + w]


def _report(mask: TissueMask, total: int, degenerate: bool, t0: float) -> SegmentationReport:
    count = mask.tissue_pixel_count
    return SegmentationReport(
        method=mask.method,
        gamma=mask.gamma,
        tissue_pixel_count=count,
        total_pixels=total,
        tissue_fraction=count / total,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        degenerate=degenerate,
    )


def _empty_mask(shape, thr: Threshold, method: Method) -> TissueMask:
    return TissueMask(bits=np.zeros(shape, dtype=bool), gamma=thr.gamma, method=method)


def segment_he(img: np.ndarray) -> tuple[TissueMask, SegmentationReport]:
    """Segment H&E-stained tissue in one in-memory pass.

    Pipeline: stain-difference field -> 256-bin histogram -> Otsu split ->
    strict-above mask.  A single-bin histogram (a blank or uniform slide)
    yields an empty mask with ``degenerate=True`` in the report rather
    than an error.
    """
    t0 = time.perf_counter()
    field = tissue_representation(img)
    hist = build_histogram(field)
    thr = otsu_threshold(hist)
    degenerate = hist.nonzero_bins <= 1
    if degenerate:
        mask = _empty_mask(field.shape, thr, Method.HE_REPRESENTATION)
    else:
        mask = apply_threshold(field, thr, Method.HE_REPRESENTATION)
    return mask, _report(mask, field.size, degenerate, t0)


def segment_luminance(img: np.ndarray) -> tuple[TissueMask, SegmentationReport]:
    """Baseline: Otsu on luminance, keeping the dark class as tissue.

    Stained tissue is darker than slide background, so pixels strictly
    below the selected gamma are marked tissue.  Degenerate histograms are
    handled as in :func:`segment_he`.
    """
    t0 = time.perf_counter()
    field = luminance(img)
    hist = build_histogram(field)
    thr = otsu_threshold(hist)
    degenerate = hist.nonzero_bins <= 1
    if degenerate:
        mask = _empty_mask(field.shape, thr, Method.LUMINANCE_BASELINE)
    else:
        mask = apply_threshold_below(field, thr, Method.LUMINANCE_BASELINE)
    return mask, _report(mask, field.size, degenerate, t0)


def _read(reader, tile) -> np.ndarray:
    try:
        arr = reader.read_tile(*tile)
    except Exception as exc:
        raise TileReadError(tile, exc) from exc
    arr = np.asarray(arr)
    x, y, w, h = tile
    if arr.shape != (h, w, 3):
        raise TileReadError(tile, ValueError(f"reader returned shape {arr.shape}"))
    return arr


def segment_he_tiled(
    reader,
    grid: TileGrid | None = None,
    workers: int = 1,
) -> tuple[TissueMask, SegmentationReport]:
    """Two-pass tiled version of :func:`segment_he`.

    ``reader`` exposes ``width``, ``height`` and ``read_tile(x, y, w, h)``
    returning that (h, w, 3) uint8 sub-raster; it must tolerate two full
    passes.  Peak memory stays at one tile + the histogram + the output
    mask.  The mask is bit-identical to the in-memory path for any grid and
    any worker count, because per-pixel maps do not cross tile edges and
    histogram merging commutes.

    Args:
        reader: tile source (e.g. ArrayTileReader, imageio.PpmTileReader).
        grid: tile layout; defaults to 512-pixel tiles over the full image.
        workers: thread count for per-tile work (results are
            scheduling-independent).
    """
    t0 = time.perf_counter()
    if grid is None:
        grid = TileGrid.cover(reader.width, reader.height)

    def tile_hist(tile):
        return build_histogram(tissue_representation(_read(reader, tile)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(tile_hist, grid.tiles))
    else:
        partials = [tile_hist(t) for t in grid.tiles]
    hist = partials[0]
    for part in partials[1:]:
        hist = merge_histograms(hist, part)

    thr = otsu_threshold(hist)
    degenerate = hist.nonzero_bins <= 1

    bits = np.zeros((grid.height, grid.width), dtype=bool)
    if not degenerate:
        # Same comparison apply_threshold performs, emitted per tile into
        # disjoint regions of the output raster.
        def fill(tile):
            x, y, w, h = tile
            field = tissue_representation(_read(reader, tile))
            bits[y : y + h, x : x + w] = field > thr.gamma

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(fill, grid.tiles))
        else:
            for tile in grid.tiles:
                fill(tile)

    mask = TissueMask(bits=bits, gamma=thr.gamma, method=Method.HE_REPRESENTATION)
    return mask, _report(mask, hist.total, degenerate, t0)


def cube_analysis(step: int = 1) -> tuple[int, float]:
    """Count lattice points of the RGB cube with a positive representation.

    Sweeps r, g, b over ``0, step, 2*step, ..., 255`` (``step`` must divide
    255 so both cube corners are sampled), evaluates the stain-difference
    representation on every triple, and counts the strictly positive ones.
    At ``step=1`` this enumerates all 2**24 colours exactly.

    Returns:
        (count_nonzero, fraction of the sampled lattice).
    """
    if step < 1:
        raise ValueError("step must be >= 1")
    if 255 % step != 0:
        raise ValueError(f"step must divide 255 to cover the cube corners, got {step}")
    lattice = np.arange(0, 256, step, dtype=np.uint8)
    n = lattice.size
    img = np.empty((n, n, 3), dtype=np.uint8)
    img[..., 0] = lattice[:, None]
    img[..., 2] = lattice[None, :]
    count = 0
    for g in lattice:
        img[..., 1] = g
        count += int(np.count_nonzero(tissue_representation(img) > 0.0))
    return count, count / float(n) ** 3
