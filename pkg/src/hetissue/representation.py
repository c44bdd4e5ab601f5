"""Per-pixel scalar representations of an RGB slide overview.

An image enters as an (H, W, 3) uint8 array and leaves as one or more
(H, W) float64 fields with values in [0, 1].  Everything here is a pure
per-pixel map, so fields may be computed on any partition of the image
(rows, tiles) and concatenated without changing a single bit.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DimensionMismatch",
    "validate_rgb_image",
    "normalize",
    "relu_diff",
    "tissue_representation",
    "luminance",
]


class DimensionMismatch(ValueError):
    """Two fields that must share a shape do not."""


def validate_rgb_image(img: np.ndarray) -> np.ndarray:
    """Check that ``img`` is a non-empty (H, W, 3) uint8 raster.

    Returns the array unchanged so calls can be chained.
    """
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 channel data, got {arr.dtype}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("image must be at least 1x1 pixel")
    return arr


def normalize(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split an RGB image into per-channel float fields scaled by 1/255.

    Args:
        img: (H, W, 3) uint8 array.

    Returns:
        Tuple of three (H, W) float64 fields (red, green, blue), each value
        being exactly ``byte / 255``.
    """
    arr = validate_rgb_image(img).astype(np.float64) / 255.0
    return arr[..., 0], arr[..., 1], arr[..., 2]


def relu_diff(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Element-wise ``max(a - b, 0)`` over two equally shaped fields."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"field shapes differ: {a.shape} vs {b.shape}")
    return np.maximum(a - b, 0.0)


def tissue_representation(img: np.ndarray) -> np.ndarray:
    """Map an RGB image to the stain-difference field used for segmentation.

    Per pixel, on 1/255-normalized channels::

        t = max(r - g, 0) * max(b - g, 0)

    Grey pixels (r == g == b) and anything green-dominant give exactly 0;
    only colours that are simultaneously redder *and* bluer than green --
    the purple-pink range of haematoxylin and eosin -- come out positive.
    Values lie in [0, 1].
    """
    red, green, blue = normalize(img)
    return relu_diff(red, green) * relu_diff(blue, green)


def luminance(img: np.ndarray) -> np.ndarray:
    """BT.601 luma of an RGB image on normalized channels, in [0, 1].

    Per pixel ``l = 0.299 r + 0.587 g + 0.114 b``.  Computed with integer
    weights (299, 587, 114 over 255000) so the numerator is an exact
    float64 integer and the result is the correctly rounded value of the
    rational weighted mean; white maps to exactly 1.0.
    """
    arr = validate_rgb_image(img).astype(np.float64)
    return (299.0 * arr[..., 0] + 587.0 * arr[..., 1] + 114.0 * arr[..., 2]) / 255000.0
