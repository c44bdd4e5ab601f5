"""Image file I/O: 8-bit RGB input, bit-exact mask/label PNGs, PPM P6.

Masks are written as single-channel PNGs holding only 0 (background) and
255 (tissue); label rasters hold the raw class ids.  PPM P6 is supported
both whole-image (via Pillow) and as a seekable tile source for the
streaming pipeline, since its fixed-stride layout allows reading any
sub-raster without decoding the rest of the file.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image

from .representation import validate_rgb_image

__all__ = [
    "read_rgb",
    "write_rgb_png",
    "write_ppm",
    "write_mask_png",
    "read_mask_png",
    "write_labels_png",
    "read_labels_png",
    "PpmTileReader",
]


def read_rgb(path: str | Path) -> np.ndarray:
    """Decode a PNG or PPM file to an (H, W, 3) uint8 array.

    Greyscale and palette images are expanded to RGB; anything Pillow
    cannot decode, or with non-8-bit channels, raises OSError/ValueError.
    """
    with Image.open(path) as im:
        if im.mode not in ("RGB", "L", "P", "RGBA", "LA"):
            raise ValueError(f"{path}: unsupported image mode {im.mode!r} (need 8-bit RGB)")
        arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return validate_rgb_image(arr)


def write_rgb_png(path: str | Path, img: np.ndarray) -> None:
    Image.fromarray(validate_rgb_image(img), mode="RGB").save(path, format="PNG")


def write_ppm(path: str | Path, img: np.ndarray) -> None:
    """Write a binary PPM (P6, maxval 255)."""
    img = validate_rgb_image(img)
    h, w = img.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


def write_mask_png(path: str | Path, bits: np.ndarray) -> None:
    """Write a boolean mask as an 8-bit PNG of {0, 255}."""
    bits = np.asarray(bits)
    if bits.ndim != 2 or bits.dtype != bool:
        raise ValueError(f"expected a 2-D boolean mask, got {bits.dtype} {bits.shape}")
    Image.fromarray(bits.astype(np.uint8) * 255, mode="L").save(path, format="PNG")


def read_mask_png(path: str | Path) -> np.ndarray:
    """Read a {0, 255} mask PNG back to a boolean array."""
    with Image.open(path) as im:
        arr = np.asarray(im.convert("L"), dtype=np.uint8)
    values = np.unique(arr)
    if not np.all(np.isin(values, (0, 255))):
        raise ValueError(f"{path}: mask PNG contains values other than 0 and 255")
    return arr == 255


def write_labels_png(path: str | Path, labels: np.ndarray) -> None:
    labels = np.asarray(labels, dtype=np.uint8)
    if labels.ndim != 2:
        raise ValueError(f"expected a 2-D label raster, got shape {labels.shape}")
    Image.fromarray(labels, mode="L").save(path, format="PNG")


def read_labels_png(path: str | Path) -> np.ndarray:
    with Image.open(path) as im:
        if im.mode != "L":
            raise ValueError(f"{path}: label PNG must be single-channel")
        return np.asarray(im, dtype=np.uint8)


def _read_ppm_header(fh) -> tuple[int, int, int]:
    """Parse a P6 header, tolerating comments, and return (w, h, offset)."""

    def next_token() -> bytes:
        tok = b""
        while True:
            ch = fh.read(1)
            if ch == b"":
                raise ValueError("truncated PPM header")
            if ch == b"#":
                while ch not in (b"\n", b""):
                    ch = fh.read(1)
                continue
            if ch.isspace():
                if tok:
                    return tok
                continue
            tok += ch

    magic = next_token()
    if magic != b"P6":
        raise ValueError(f"not a binary PPM (P6) file, magic {magic!r}")
    width = int(next_token())
    height = int(next_token())
    maxval = int(next_token())
    if maxval != 255:
        raise ValueError(f"only 8-bit PPM supported, maxval {maxval}")
    if width < 1 or height < 1:
        raise ValueError("PPM dimensions must be positive")
    return width, height, fh.tell()


class PpmTileReader:
    """Constant-memory tile source over a binary PPM (P6) file.

    Each ``read_tile`` reads row by row with positional reads (os.pread),
    so memory stays at one tile no matter how large the file is and
    concurrent tile reads never share a file position.  The handle
    supports any number of passes; use as a context manager or call
    :meth:`close`.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._fh = open(self._path, "rb")
        try:
            self.width, self.height, self._offset = _read_ppm_header(self._fh)
        except Exception:
            self._fh.close()
            raise

    def read_tile(self, x: int, y: int, w: int, h: int) -> np.ndarray:
        if x < 0 or y < 0 or w < 1 or h < 1 or x + w > self.width or y + h > self.height:
            raise ValueError(f"tile (x={x}, y={y}, w={w}, h={h}) outside {self.width}x{self.height}")
        fd = self._fh.fileno()
        out = np.empty((h, w, 3), dtype=np.uint8)
        row_bytes = w * 3
        for r in range(h):
            pos = self._offset + ((y + r) * self.width + x) * 3
            data = os.pread(fd, row_bytes, pos)
            if len(data) != row_bytes:
                raise ValueError(f"{self._path}: truncated pixel data")
            out[r] = np.frombuffer(data, dtype=np.uint8).reshape(w, 3)
        return out

    def close(self) -> None:
        self._fh.close()

    def __enter__(self) -> "PpmTileReader":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
