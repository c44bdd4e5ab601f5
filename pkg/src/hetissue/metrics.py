"""Mask comparison: Dice overlap, confusion counts, and per-scene success.

A predicted mask is judged against a label raster whose classes come from
the synthetic scene generator (background / tissue / pen / bounding box /
scan artefact).  "Success" operationalizes a qualitative reading of a
segmentation -- all tissue kept, everything else out -- as explicit pixel
tolerances: a minimum tissue recall plus a maximum leakage fraction per
non-tissue class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .representation import DimensionMismatch
from .synthgen import Label
from .thresholding import TissueMask

__all__ = [
    "EvalTolerances",
    "MaskComparison",
    "SuccessCriteria",
    "dice",
    "confusion_counts",
    "evaluate",
]


@dataclass(frozen=True)
class EvalTolerances:
    """Pixel tolerances that turn region counts into pass/fail flags."""

    min_tissue_recall: float = 0.99
    max_background_leak: float = 0.001
    max_bounding_box_leak: float = 0.001
    max_artefact_leak: float = 0.001


@dataclass(frozen=True)
class MaskComparison:
    dice: float
    tp: int
    fp: int
    fn: int
    tn: int
    artefact_pixels_in_mask: int
    tissue_recall: float
    background_rejection: float


@dataclass(frozen=True)
class SuccessCriteria:
    all_tissue_segmented: bool
    all_background_rejected: bool
    all_bounding_boxes_rejected: bool
    all_artefacts_rejected: bool
    success: bool


def _bits(mask) -> np.ndarray:
    if isinstance(mask, TissueMask):
        return mask.bits
    arr = np.asarray(mask)
    if arr.dtype != bool:
        raise ValueError(f"expected a boolean mask, got dtype {arr.dtype}")
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
    return arr


def confusion_counts(pred, truth) -> tuple[int, int, int, int]:
    """(tp, fp, fn, tn) of a predicted mask against a reference mask."""
    p = _bits(pred)
    t = _bits(truth)
    if p.shape != t.shape:
        raise DimensionMismatch(f"mask shapes differ: {p.shape} vs {t.shape}")
    tp = int(np.count_nonzero(p & t))
    fp = int(np.count_nonzero(p & ~t))
    fn = int(np.count_nonzero(~p & t))
    tn = p.size - tp - fp - fn
    return tp, fp, fn, tn


def dice(pred, truth) -> float:
    """Sorensen-Dice overlap ``2|A&B| / (|A| + |B|)``; 1.0 if both empty."""
    tp, fp, fn, _ = confusion_counts(pred, truth)
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 1.0
    return 2.0 * tp / denom


def _leak_fraction(pred_bits: np.ndarray, region: np.ndarray) -> tuple[int, float]:
    """Pixels of ``region`` that the mask kept, as count and fraction.

    An absent region leaks nothing (fraction 0.0).
    """
    total = int(np.count_nonzero(region))
    if total == 0:
        return 0, 0.0
    leaked = int(np.count_nonzero(pred_bits & region))
    return leaked, leaked / total


def evaluate(
    pred,
    labels: np.ndarray,
    tolerances: EvalTolerances = EvalTolerances(),
) -> tuple[MaskComparison, SuccessCriteria]:
    """Score a predicted mask against a per-pixel class raster.

    Args:
        pred: predicted TissueMask or boolean array.
        labels: (H, W) class raster using :class:`hetissue.synthgen.Label`
            values (the generator's rendered labels).
        tolerances: pass/fail thresholds.

    Returns:
        The pixel-level comparison and the derived success flags.  Flags
        for classes absent from the scene hold vacuously.
    """
    p = _bits(pred)
    labels = np.asarray(labels)
    if labels.shape != p.shape:
        raise DimensionMismatch(f"labels shape {labels.shape} != mask shape {p.shape}")

    truth = labels == Label.TISSUE
    tp, fp, fn, tn = confusion_counts(p, truth)
    denom = 2 * tp + fp + fn
    dice_value = 1.0 if denom == 0 else 2.0 * tp / denom
    tissue_recall = 1.0 if tp + fn == 0 else tp / (tp + fn)

    bg_leaked, bg_frac = _leak_fraction(p, labels == Label.BACKGROUND)
    bbox_leaked, bbox_frac = _leak_fraction(p, labels == Label.BOUNDING_BOX)
    artefact_region = (labels == Label.PEN) | (labels == Label.SCAN_ARTEFACT)
    art_leaked, art_frac = _leak_fraction(p, artefact_region)

    comparison = MaskComparison(
        dice=dice_value,
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
        artefact_pixels_in_mask=art_leaked,
        tissue_recall=tissue_recall,
        background_rejection=1.0 - bg_frac,
    )
    flags = (
        tissue_recall >= tolerances.min_tissue_recall,
        bg_frac <= tolerances.max_background_leak,
        bbox_frac <= tolerances.max_bounding_box_leak,
        art_frac <= tolerances.max_artefact_leak,
    )
    criteria = SuccessCriteria(
        all_tissue_segmented=flags[0],
        all_background_rejected=flags[1],
        all_bounding_boxes_rejected=flags[2],
        all_artefacts_rejected=flags[3],
        success=all(flags),
    )
    return comparison, criteria
