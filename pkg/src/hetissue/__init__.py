"""Segment H&E-stained tissue in slide overviews and reject artefacts.

The core idea: on 1/255-normalized channels, map each pixel to
``max(r - g, 0) * max(b - g, 0)``.  Greys, green/blue/orange inks, dark
scanner marks and near-white background all collapse to (or next to) zero,
while purple-pink stained tissue stays well above it, so a global Otsu
threshold on this field separates tissue from both background and
artefacts.  A luminance-Otsu baseline, Dice/success metrics, a seeded
synthetic-slide generator, and a constant-memory tiled pipeline round out
the toolkit.
"""

from .representation import (
    DimensionMismatch,
    luminance,
    normalize,
    relu_diff,
    tissue_representation,
    validate_rgb_image,
)
from .thresholding import (
    BINS,
    DegenerateHistogram,
    Histogram256,
    Method,
    Threshold,
    TissueMask,
    apply_threshold,
    apply_threshold_below,
    build_histogram,
    merge_histograms,
    otsu_threshold,
)
from .pipeline import (
    ArrayTileReader,
    SegmentationReport,
    TileGrid,
    TileReadError,
    cube_analysis,
    segment_he,
    segment_he_tiled,
    segment_luminance,
)
from .metrics import (
    EvalTolerances,
    MaskComparison,
    SuccessCriteria,
    confusion_counts,
    dice,
    evaluate,
)
from .synthgen import (
    Label,
    PEN_COLORS,
    RenderedScene,
    SceneValidationError,
    SynthScene,
    artefact_dominant_scene,
    build_scene,
    generate,
    render,
    standard_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # representation
    "DimensionMismatch",
    "luminance",
    "normalize",
    "relu_diff",
    "tissue_representation",
    "validate_rgb_image",
    # thresholding
    "BINS",
    "DegenerateHistogram",
    "Histogram256",
    "Method",
    "Threshold",
    "TissueMask",
    "apply_threshold",
    "apply_threshold_below",
    "build_histogram",
    "merge_histograms",
    "otsu_threshold",
    # pipeline
    "ArrayTileReader",
    "SegmentationReport",
    "TileGrid",
    "TileReadError",
    "cube_analysis",
    "segment_he",
    "segment_he_tiled",
    "segment_luminance",
    # metrics
    "EvalTolerances",
    "MaskComparison",
    "SuccessCriteria",
    "confusion_counts",
    "dice",
    "evaluate",
    # synthgen
    "Label",
    "PEN_COLORS",
    "RenderedScene",
    "SceneValidationError",
    "SynthScene",
    "artefact_dominant_scene",
    "build_scene",
    "generate",
    "render",
    "standard_corpus",
]
