"""Histogramming and Otsu threshold selection over [0, 1] scalar fields.

The field is discretized into 256 equal bins (matching the 8-bit origin of
the data).  Otsu's criterion -- maximize the between-class variance
``w0 * w1 * (mu0 - mu1)**2`` over all splits -- is evaluated with exact
integer arithmetic so the winning bin and its tie-breaks are deterministic
and independent of float rounding.  Histograms merge by addition, which is
what makes tiled/streaming accumulation order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "BINS",
    "DegenerateHistogram",
    "Method",
    "Histogram256",
    "Threshold",
    "TissueMask",
    "build_histogram",
    "merge_histograms",
    "otsu_threshold",
    "apply_threshold",
    "apply_threshold_below",
]

BINS = 256


class DegenerateHistogram(ValueError):
    """Histogram carries no mass, so no threshold can be selected."""


class Method(str, Enum):
    """Provenance of a tissue mask."""

    HE_REPRESENTATION = "he_representation"
    LUMINANCE_BASELINE = "luminance_baseline"
    GROUND_TRUTH = "ground_truth"


@dataclass(frozen=True)
class Histogram256:
    """Counts over 256 equal bins covering [0, 1].

    Bin ``i`` holds values ``v`` with ``i/256 <= v < (i+1)/256``; the top
    bin additionally includes ``v == 1.0``.
    """

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (BINS,):
            raise ValueError(f"expected {BINS} bins, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("bin counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def nonzero_bins(self) -> int:
        return int(np.count_nonzero(self.counts))


@dataclass(frozen=True)
class Threshold:
    """A selected split: ``gamma`` is the upper edge of the winning bin."""

    gamma: float
    bin_index: int
    variance: float


@dataclass(frozen=True)
class TissueMask:
    """Binary tissue raster plus the threshold that produced it."""

    bits: np.ndarray
    gamma: float
    method: Method

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"mask must be 2-D, got shape {bits.shape}")
        object.__setattr__(self, "bits", bits)

    @property
    def tissue_pixel_count(self) -> int:
        return int(np.count_nonzero(self.bits))

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape


def build_histogram(values: np.ndarray) -> Histogram256:
    """Histogram a [0, 1] scalar field into 256 bins.

    Bin index is ``floor(v * 256)`` clamped to 255 so that 1.0 lands in the
    top bin.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError("field values must lie in [0, 1]")
    idx = np.minimum((values * float(BINS)).astype(np.int64), BINS - 1)
    return Histogram256(np.bincount(idx.ravel(), minlength=BINS))


def merge_histograms(a: Histogram256, b: Histogram256) -> Histogram256:
    """Element-wise sum of two histograms; totals add."""
    return Histogram256(a.counts + b.counts)


def otsu_threshold(hist: Histogram256) -> Threshold:
    """Pick the split maximizing between-class variance.

    Candidate splits ``t`` in 0..254 put bins 0..t into class 0 and bins
    t+1..255 into class 1; bin values are the bin centers ``(i + 0.5)/256``.
    A split where either class is empty scores zero.  Scores are compared as
    exact rationals (integer cross-multiplication), and ties resolve to the
    smallest bin index.  The returned gamma is ``(t + 1)/256``.

    Raises:
        DegenerateHistogram: if the histogram holds no pixels.
    """
    counts = [int(c) for c in hist.counts]
    total = sum(counts)
    if total == 0:
        raise DegenerateHistogram("cannot threshold an empty histogram")

    # Work in units of twice the 512ths of intensity: bin center
    # (i + 0.5)/256 == (2i + 1)/512, so weight each bin by (2i + 1).
    weighted = [(2 * i + 1) * counts[i] for i in range(BINS)]
    sum_all = sum(weighted)

    # sigma_b^2(t) = (s0*c1 - s1*c0)^2 / (512^2 * total^2 * c0 * c1);
    # the constant factor is shared, so compare num/den across splits.
    best_t = 0
    best_num = 0
    best_den = 1
    c0 = 0
    s0 = 0
    for t in range(BINS - 1):
        c0 += counts[t]
        s0 += weighted[t]
        c1 = total - c0
        s1 = sum_all - s0
        if c0 == 0 or c1 == 0:
            num, den = 0, 1
        else:
            d = s0 * c1 - s1 * c0
            num, den = d * d, c0 * c1
        if t == 0:
            best_num, best_den = num, den
        elif num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den

    if best_num == 0:
        variance = 0.0
    else:
        variance = float(best_num) / (float(best_den) * total * total * 512.0 * 512.0)
    return Threshold(gamma=(best_t + 1) / float(BINS), bin_index=best_t, variance=variance)


def apply_threshold(values: np.ndarray, thr: Threshold, method: Method) -> TissueMask:
    """Mark pixels strictly above gamma as tissue.

    The strict ``>`` pairs with gamma being a bin's upper edge: a bin is
    never split by its own threshold, and a value equal to gamma is
    rejected.
    """
    values = np.asarray(values, dtype=np.float64)
    return TissueMask(bits=values > thr.gamma, gamma=thr.gamma, method=method)


def apply_threshold_below(values: np.ndarray, thr: Threshold, method: Method) -> TissueMask:
    """Mark pixels strictly below gamma as tissue (dark-class polarity).

    Used by the luminance baseline, where stained tissue is darker than
    the slide background.  ``v < gamma`` selects exactly the bins
    0..bin_index of the split.
    """
    values = np.asarray(values, dtype=np.float64)
    return TissueMask(bits=values < thr.gamma, gamma=thr.gamma, method=method)
