"""Seeded generator of synthetic slide scenes with exact per-pixel labels.

Scenes are declarative: a list of smooth tissue blobs, pen strokes, an
optional scanner bounding box, and dark scan artefacts (blobs or text-like
glyph clusters), all stored as explicit geometry so a scene file fully
determines its rendering.  Rendering is hard-edged (no antialiasing) and a
pure function of the scene, so the same scene always produces the same
bytes and the label raster is exact.

Palette construction is what makes the corpus useful as a test bed:

* tissue colours keep red and blue well above green, so the
  stain-difference representation is comfortably positive;
* background is near-white with a mild warm tint and bounded noise, so its
  representation value always stays below the first histogram bin edge;
* pen inks (black/blue/green/orange/red) have green >= red or green >=
  blue, or are grey, giving a representation of exactly zero -- except the
  deliberately eosin-coloured pink pen, which lands inside the tissue range
  and is the designated expected-failure case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np
from skimage.draw import disk as draw_disk
from skimage.draw import polygon as draw_polygon

from .thresholding import Method, TissueMask

__all__ = [
    "Label",
    "PEN_COLORS",
    "SCAN_ARTEFACT_COLORS",
    "BOUNDING_BOX_COLORS",
    "BACKGROUND_COLOR",
    "SceneValidationError",
    "TissueBlob",
    "PenStroke",
    "BoundingBox",
    "ScanArtefact",
    "SynthScene",
    "RenderedScene",
    "render",
    "generate",
    "build_scene",
    "artefact_dominant_scene",
    "standard_corpus",
    "scene_to_dict",
    "scene_from_dict",
    "save_scene",
    "load_scene",
]


class Label(IntEnum):
    """Per-pixel class of a rendered scene."""

    BACKGROUND = 0
    TISSUE = 1
    PEN = 2
    BOUNDING_BOX = 3
    SCAN_ARTEFACT = 4


class SceneValidationError(ValueError):
    """Scene geometry falls outside the raster."""


# Inks seen on real slides. All except pink satisfy g >= r or g >= b (or
# are grey), so their stain-difference value is exactly zero; pink sits
# inside the eosin colour range on purpose.
PEN_COLORS: dict[str, tuple[int, int, int]] = {
    "black": (20, 20, 20),
    "blue": (45, 60, 190),
    "green": (40, 150, 70),
    "orange": (235, 130, 30),
    "red": (205, 45, 45),
    "pink": (220, 110, 215),
}

SCAN_ARTEFACT_COLORS: tuple[tuple[int, int, int], ...] = (
    (25, 25, 28),
    (52, 54, 56),
    (38, 35, 40),
)

BOUNDING_BOX_COLORS: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0),
    (90, 90, 90),
    (30, 140, 30),
)

# Near-white with a mild warm tint; blue <= green keeps the representation
# at zero before noise, and +-5 noise cannot push it past the first bin.
BACKGROUND_COLOR: tuple[int, int, int] = (247, 245, 243)

NOISE_AMPLITUDE = 5

# Per-blob channel offsets: r = g + dr, b = g + db with dr, db in this
# band. With +-5 noise on each channel the differences stay in [90, 132],
# so tissue representation values stay inside [0.124, 0.269] -- far above
# anything background noise can reach.
_TISSUE_DIFF_BAND = (100, 122)
_TISSUE_GREEN_BAND = (60, 105)


@dataclass(frozen=True)
class TissueBlob:
    points: np.ndarray  # (N, 2) float64, columns (x, y)
    color: tuple[int, int, int]


@dataclass(frozen=True)
class PenStroke:
    name: str
    color: tuple[int, int, int]
    points: np.ndarray  # (N, 2) float64 waypoints
    width: float


@dataclass(frozen=True)
class BoundingBox:
    x0: int
    y0: int
    x1: int
    y1: int
    thickness: int
    color: tuple[int, int, int]


@dataclass(frozen=True)
class ScanArtefact:
    kind: str  # "blob" | "text"
    color: tuple[int, int, int]
    points: np.ndarray | None = None  # blob polygon
    rects: np.ndarray | None = None  # (N, 4) int (x, y, w, h) glyph blocks


@dataclass(frozen=True)
class SynthScene:
    scene_id: int
    seed: int
    kind: str  # "clean" | "pen" | "scan"
    width: int
    height: int
    background: tuple[int, int, int] = BACKGROUND_COLOR
    tissue_blobs: tuple[TissueBlob, ...] = ()
    pen_strokes: tuple[PenStroke, ...] = ()
    bounding_box: BoundingBox | None = None
    scan_artefacts: tuple[ScanArtefact, ...] = ()
    expected_failure: bool = False
    noise_amplitude: int = NOISE_AMPLITUDE


@dataclass(frozen=True)
class RenderedScene:
    image: np.ndarray  # (H, W, 3) uint8
    labels: np.ndarray  # (H, W) uint8 of Label values

    @property
    def truth_bits(self) -> np.ndarray:
        return self.labels == Label.TISSUE


# ---------------------------------------------------------------------------
# geometry helpers


def _chaikin(points: np.ndarray, rounds: int = 2) -> np.ndarray:
    """Corner-cutting midpoint subdivision of a closed polygon.

    Each round replaces every edge (a, b) with the two points at 1/4 and
    3/4 along it, doubling the vertex count and rounding the shape.
    """
    pts = np.asarray(points, dtype=np.float64)
    for _ in range(rounds):
        nxt = np.roll(pts, -1, axis=0)
        out = np.empty((2 * len(pts), 2), dtype=np.float64)
        out[0::2] = 0.75 * pts + 0.25 * nxt
        out[1::2] = 0.25 * pts + 0.75 * nxt
        pts = out
    return pts


def _random_blob_polygon(rng: np.random.Generator, center, radius: float) -> np.ndarray:
    k = int(rng.integers(7, 12))
    angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, k))
    radii = radius * rng.uniform(0.55, 1.25, k)
    pts = np.stack(
        [center[0] + radii * np.cos(angles), center[1] + radii * np.sin(angles)],
        axis=1,
    )
    return _chaikin(pts, rounds=2)


def _polygon_mask(points: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    rr, cc = draw_polygon(points[:, 1], points[:, 0], shape=shape)
    mask[rr, cc] = True
    return mask


def _stroke_mask(points: np.ndarray, width: float, shape: tuple[int, int]) -> np.ndarray:
    """Rasterize a polyline with round caps and joints, hard-edged."""
    mask = np.zeros(shape, dtype=bool)
    half = width / 2.0
    for p, q in zip(points[:-1], points[1:]):
        seg = q - p
        length = float(np.hypot(*seg))
        if length == 0.0:
            continue
        normal = np.array([-seg[1], seg[0]]) / length * half
        quad = np.array([p + normal, q + normal, q - normal, p - normal])
        rr, cc = draw_polygon(quad[:, 1], quad[:, 0], shape=shape)
        mask[rr, cc] = True
    for p in points:
        rr, cc = draw_disk((p[1], p[0]), half, shape=shape)
        mask[rr, cc] = True
    return mask


def _shoelace_area(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


# ---------------------------------------------------------------------------
# scene construction


def _sample_tissue_color(rng: np.random.Generator) -> tuple[int, int, int]:
    g = int(rng.integers(_TISSUE_GREEN_BAND[0], _TISSUE_GREEN_BAND[1] + 1))
    dr = int(rng.integers(_TISSUE_DIFF_BAND[0], _TISSUE_DIFF_BAND[1] + 1))
    db = int(rng.integers(_TISSUE_DIFF_BAND[0], _TISSUE_DIFF_BAND[1] + 1))
    return (g + dr, g, g + db)


def _place_blobs(rng: np.random.Generator, width: int, height: int) -> list[TissueBlob]:
    min_dim = min(width, height)
    n = int(rng.integers(2, 6))
    target = rng.uniform(0.18, 0.30) * width * height
    weights = rng.uniform(0.7, 1.3, n)
    areas = target * weights / weights.sum()
    # Smoothed star polygons come out near 2.3 * R^2 in area.
    radii = np.minimum(np.sqrt(areas / 2.3), 0.33 * min_dim)

    placed: list[tuple[np.ndarray, float]] = []
    blobs: list[TissueBlob] = []
    for r in radii:
        margin = 1.35 * r + 3.0
        if 2 * margin >= min(width, height):
            continue
        for _ in range(40):
            center = np.array(
                [rng.uniform(margin, width - 1 - margin), rng.uniform(margin, height - 1 - margin)]
            )
            if all(np.hypot(*(center - c)) >= 0.8 * (r + pr) for c, pr in placed):
                poly = _random_blob_polygon(rng, center, r)
                np.clip(poly[:, 0], 1.0, width - 2.0, out=poly[:, 0])
                np.clip(poly[:, 1], 1.0, height - 2.0, out=poly[:, 1])
                placed.append((center, r))
                blobs.append(TissueBlob(points=poly, color=_sample_tissue_color(rng)))
                break
    return blobs


def _random_polyline(rng: np.random.Generator, width: int, height: int) -> np.ndarray:
    min_dim = min(width, height)
    n = int(rng.integers(3, 7))
    pts = [
        np.array(
            [rng.uniform(0.15 * width, 0.85 * width), rng.uniform(0.15 * height, 0.85 * height)]
        )
    ]
    for _ in range(n - 1):
        step = rng.uniform(0.18, 0.42) * min_dim
        angle = rng.uniform(0.0, 2.0 * np.pi)
        nxt = pts[-1] + step * np.array([np.cos(angle), np.sin(angle)])
        nxt[0] = np.clip(nxt[0], 8.0, width - 9.0)
        nxt[1] = np.clip(nxt[1], 8.0, height - 9.0)
        pts.append(nxt)
    return np.array(pts)


def _make_pen_strokes(
    rng: np.random.Generator, width: int, height: int, color_name: str
) -> tuple[PenStroke, ...]:
    color = PEN_COLORS[color_name]
    n = int(rng.integers(1, 4))
    strokes = []
    for _ in range(n):
        strokes.append(
            PenStroke(
                name=color_name,
                color=color,
                points=_random_polyline(rng, width, height),
                width=float(rng.uniform(4.0, 9.0)),
            )
        )
    return tuple(strokes)


def _make_text_cluster(rng: np.random.Generator, width: int, height: int) -> ScanArtefact:
    color = SCAN_ARTEFACT_COLORS[int(rng.integers(0, len(SCAN_ARTEFACT_COLORS)))]
    n_glyphs = int(rng.integers(4, 9))
    block = 2
    cell_w, cell_h = 3 * block + 2, 5 * block
    total_w = n_glyphs * (cell_w + 2)
    x0 = int(rng.integers(4, max(5, width - total_w - 4)))
    y0 = int(rng.integers(4, max(5, height - cell_h - 4)))
    rects = []
    for gi in range(n_glyphs):
        gx = x0 + gi * (cell_w + 2)
        pattern = rng.random((5, 3)) < 0.55
        for row in range(5):
            for col in range(3):
                if pattern[row, col]:
                    rects.append((gx + col * block, y0 + row * block, block, block))
    return ScanArtefact(kind="text", color=color, rects=np.array(rects, dtype=np.int64))


def _make_scan_artefacts(
    rng: np.random.Generator, width: int, height: int
) -> tuple[tuple[ScanArtefact, ...], BoundingBox | None]:
    min_dim = min(width, height)
    artefacts: list[ScanArtefact] = []
    for _ in range(int(rng.integers(1, 3))):
        radius = rng.uniform(0.05, 0.11) * min_dim
        margin = 1.35 * radius + 3.0
        center = np.array(
            [rng.uniform(margin, width - 1 - margin), rng.uniform(margin, height - 1 - margin)]
        )
        poly = _random_blob_polygon(rng, center, radius)
        np.clip(poly[:, 0], 1.0, width - 2.0, out=poly[:, 0])
        np.clip(poly[:, 1], 1.0, height - 2.0, out=poly[:, 1])
        color = SCAN_ARTEFACT_COLORS[int(rng.integers(0, len(SCAN_ARTEFACT_COLORS)))]
        artefacts.append(ScanArtefact(kind="blob", color=color, points=poly))
    if rng.random() < 0.6:
        artefacts.append(_make_text_cluster(rng, width, height))

    bbox = None
    if rng.random() < 0.5:
        m = int(rng.integers(4, 13))
        bbox = BoundingBox(
            x0=m,
            y0=m,
            x1=width - 1 - m,
            y1=height - 1 - m,
            thickness=int(rng.integers(2, 5)),
            color=BOUNDING_BOX_COLORS[int(rng.integers(0, len(BOUNDING_BOX_COLORS)))],
        )
    return tuple(artefacts), bbox


def build_scene(
    seed: int,
    width: int = 480,
    height: int = 320,
    kind: str = "clean",
    pen_color: str | None = None,
    scene_id: int = 0,
) -> SynthScene:
    """Build one scene's declarative geometry from a seed.

    ``kind`` selects the artefact content: "clean" has none, "pen" adds
    strokes of ``pen_color`` (required), "scan" adds dark blobs, possibly a
    text cluster, and possibly a scanner bounding box.  The pink pen is
    flagged as the expected failure.
    """
    if kind not in ("clean", "pen", "scan"):
        raise ValueError(f"unknown scene kind {kind!r}")
    if kind == "pen":
        if pen_color not in PEN_COLORS:
            raise ValueError(f"pen scenes need a pen_color from {sorted(PEN_COLORS)}")
    elif pen_color is not None:
        raise ValueError("pen_color only applies to pen scenes")

    rng = np.random.default_rng(seed)
    blobs = tuple(_place_blobs(rng, width, height))
    strokes: tuple[PenStroke, ...] = ()
    artefacts: tuple[ScanArtefact, ...] = ()
    bbox = None
    if kind == "pen":
        strokes = _make_pen_strokes(rng, width, height, pen_color)
    elif kind == "scan":
        artefacts, bbox = _make_scan_artefacts(rng, width, height)
    return SynthScene(
        scene_id=scene_id,
        seed=seed,
        kind=kind,
        width=width,
        height=height,
        tissue_blobs=blobs,
        pen_strokes=strokes,
        bounding_box=bbox,
        scan_artefacts=artefacts,
        expected_failure=(pen_color == "pink"),
    )


def artefact_dominant_scene(seed: int, width: int = 480, height: int = 320) -> SynthScene:
    """A scene where a huge, very dark artefact dwarfs a small tissue blob.

    On such slides a luminance threshold separates the artefact from
    everything else and drops the tissue entirely; the stain-difference
    method is unaffected.
    """
    rng = np.random.default_rng(seed)
    min_dim = min(width, height)

    tissue_r = 0.14 * min_dim
    margin = 1.35 * tissue_r + 3.0
    center = np.array([rng.uniform(margin, 0.35 * width), rng.uniform(margin, height - 1 - margin)])
    poly = _random_blob_polygon(rng, center, tissue_r)
    np.clip(poly[:, 0], 1.0, width - 2.0, out=poly[:, 0])
    np.clip(poly[:, 1], 1.0, height - 2.0, out=poly[:, 1])
    blob = TissueBlob(points=poly, color=_sample_tissue_color(rng))

    dark_r = 0.42 * min_dim
    dark_center = np.array([0.68 * width, 0.5 * height])
    dark_poly = _random_blob_polygon(rng, dark_center, dark_r)
    np.clip(dark_poly[:, 0], 1.0, width - 2.0, out=dark_poly[:, 0])
    np.clip(dark_poly[:, 1], 1.0, height - 2.0, out=dark_poly[:, 1])
    artefact = ScanArtefact(kind="blob", color=(5, 5, 6), points=dark_poly)

    return SynthScene(
        scene_id=0,
        seed=seed,
        kind="scan",
        width=width,
        height=height,
        tissue_blobs=(blob,),
        scan_artefacts=(artefact,),
    )


def standard_corpus(master_seed: int = 0) -> list[SynthScene]:
    """The 60-scene benchmark mix: 15 pen, 15 scan-artefact, 30 clean.

    Pen colours cycle through black/blue/green/orange/red, with the single
    pink-pen scene (the expected failure) closing the pen block.  Scene
    seeds derive from the master seed, so different master seeds give
    disjoint corpora while a fixed master seed is fully reproducible.
    """
    children = np.random.SeedSequence(master_seed).spawn(60)
    seeds = [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]
    cycle = ["black", "blue", "green", "orange", "red"]
    scenes = []
    for i in range(60):
        if i < 15:
            kind = "pen"
            color = "pink" if i == 14 else cycle[i % len(cycle)]
        elif i < 30:
            kind, color = "scan", None
        else:
            kind, color = "clean", None
        scenes.append(build_scene(seeds[i], kind=kind, pen_color=color, scene_id=i))
    return scenes


# ---------------------------------------------------------------------------
# rendering


def _validate_scene(scene: SynthScene) -> None:
    w, h = scene.width, scene.height
    if w < 1 or h < 1:
        raise SceneValidationError("scene dimensions must be positive")

    def check_points(points: np.ndarray, what: str) -> None:
        pts = np.asarray(points)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise SceneValidationError(f"{what}: expected an (N, 2) point array")
        if (
            pts[:, 0].min() < 0
            or pts[:, 0].max() > w - 1
            or pts[:, 1].min() < 0
            or pts[:, 1].max() > h - 1
        ):
            raise SceneValidationError(f"{what}: geometry outside the {w}x{h} raster")

    for i, blob in enumerate(scene.tissue_blobs):
        check_points(blob.points, f"tissue blob {i}")
    for i, stroke in enumerate(scene.pen_strokes):
        check_points(stroke.points, f"pen stroke {i}")
        if stroke.width <= 0:
            raise SceneValidationError(f"pen stroke {i}: width must be positive")
    for i, art in enumerate(scene.scan_artefacts):
        if art.kind == "blob":
            check_points(art.points, f"scan artefact {i}")
        elif art.kind == "text":
            rects = np.asarray(art.rects)
            if rects.size and (
                rects[:, 0].min() < 0
                or rects[:, 1].min() < 0
                or (rects[:, 0] + rects[:, 2]).max() > w
                or (rects[:, 1] + rects[:, 3]).max() > h
            ):
                raise SceneValidationError(f"scan artefact {i}: text blocks outside the raster")
        else:
            raise SceneValidationError(f"scan artefact {i}: unknown kind {art.kind!r}")
    box = scene.bounding_box
    if box is not None:
        if not (0 <= box.x0 < box.x1 <= w - 1 and 0 <= box.y0 < box.y1 <= h - 1):
            raise SceneValidationError("bounding box outside the raster or inverted")
        if box.thickness < 1:
            raise SceneValidationError("bounding box thickness must be positive")


def _paint(img, labels, mask, color, label):
    img[mask] = color
    labels[mask] = label


def render(scene: SynthScene) -> RenderedScene:
    """Rasterize a scene to its image and label raster.

    Draw order (later wins, opaque): background, tissue, scan artefacts,
    bounding box, pen strokes.  Seeded +-noise_amplitude noise is then
    added to background and tissue pixels only; artefact and pen colours
    stay exact.
    """
    _validate_scene(scene)
    h, w = scene.height, scene.width
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:] = scene.background
    labels = np.full((h, w), int(Label.BACKGROUND), dtype=np.uint8)

    for blob in scene.tissue_blobs:
        _paint(img, labels, _polygon_mask(blob.points, (h, w)), blob.color, Label.TISSUE)

    for art in scene.scan_artefacts:
        if art.kind == "blob":
            mask = _polygon_mask(art.points, (h, w))
        else:
            mask = np.zeros((h, w), dtype=bool)
            for x, y, bw, bh in np.asarray(art.rects):
                mask[y : y + bh, x : x + bw] = True
        _paint(img, labels, mask, art.color, Label.SCAN_ARTEFACT)

    box = scene.bounding_box
    if box is not None:
        mask = np.zeros((h, w), dtype=bool)
        t = box.thickness
        mask[box.y0 : box.y1 + 1, box.x0 : box.x0 + t] = True
        mask[box.y0 : box.y1 + 1, box.x1 - t + 1 : box.x1 + 1] = True
        mask[box.y0 : box.y0 + t, box.x0 : box.x1 + 1] = True
        mask[box.y1 - t + 1 : box.y1 + 1, box.x0 : box.x1 + 1] = True
        _paint(img, labels, mask, box.color, Label.BOUNDING_BOX)

    for stroke in scene.pen_strokes:
        mask = _stroke_mask(stroke.points, stroke.width, (h, w))
        _paint(img, labels, mask, stroke.color, Label.PEN)

    if scene.noise_amplitude > 0:
        rng = np.random.default_rng(scene.seed)
        amp = scene.noise_amplitude
        noise = rng.integers(-amp, amp + 1, size=(h, w, 3), dtype=np.int16)
        noisy = labels <= Label.TISSUE
        shifted = np.clip(img.astype(np.int16) + noise, 0, 255).astype(np.uint8)
        img = np.where(noisy[..., None], shifted, img)

    return RenderedScene(image=img, labels=labels)


def generate(scene: SynthScene) -> tuple[np.ndarray, TissueMask]:
    """Render a scene to (image, ground-truth tissue mask)."""
    rendered = render(scene)
    truth = TissueMask(bits=rendered.truth_bits, gamma=0.0, method=Method.GROUND_TRUTH)
    return rendered.image, truth


# ---------------------------------------------------------------------------
# serialization


def _color(c) -> tuple[int, int, int]:
    r, g, b = (int(v) for v in c)
    return (r, g, b)


def scene_to_dict(scene: SynthScene) -> dict:
    def points_list(points: np.ndarray) -> list[list[float]]:
        return [[float(x), float(y)] for x, y in np.asarray(points)]

    out = {
        "schema_version": 1,
        "scene_id": scene.scene_id,
        "seed": int(scene.seed),
        "kind": scene.kind,
        "width": scene.width,
        "height": scene.height,
        "background": list(scene.background),
        "noise_amplitude": scene.noise_amplitude,
        "expected_failure": scene.expected_failure,
        "tissue_blobs": [
            {"color": list(b.color), "points": points_list(b.points)} for b in scene.tissue_blobs
        ],
        "pen_strokes": [
            {
                "name": s.name,
                "color": list(s.color),
                "width": s.width,
                "points": points_list(s.points),
            }
            for s in scene.pen_strokes
        ],
        "bounding_box": None,
        "scan_artefacts": [],
    }
    if scene.bounding_box is not None:
        box = scene.bounding_box
        out["bounding_box"] = {
            "x0": box.x0,
            "y0": box.y0,
            "x1": box.x1,
            "y1": box.y1,
            "thickness": box.thickness,
            "color": list(box.color),
        }
    for art in scene.scan_artefacts:
        entry: dict = {"kind": art.kind, "color": list(art.color)}
        if art.kind == "blob":
            entry["points"] = points_list(art.points)
        else:
            entry["rects"] = [[int(v) for v in r] for r in np.asarray(art.rects)]
        out["scan_artefacts"].append(entry)
    return out


def scene_from_dict(data: dict) -> SynthScene:
    bbox = None
    if data.get("bounding_box") is not None:
        b = data["bounding_box"]
        bbox = BoundingBox(
            x0=int(b["x0"]),
            y0=int(b["y0"]),
            x1=int(b["x1"]),
            y1=int(b["y1"]),
            thickness=int(b["thickness"]),
            color=_color(b["color"]),
        )
    artefacts = []
    for entry in data.get("scan_artefacts", []):
        if entry["kind"] == "blob":
            artefacts.append(
                ScanArtefact(
                    kind="blob",
                    color=_color(entry["color"]),
                    points=np.asarray(entry["points"], dtype=np.float64),
                )
            )
        else:
            artefacts.append(
                ScanArtefact(
                    kind="text",
                    color=_color(entry["color"]),
                    rects=np.asarray(entry["rects"], dtype=np.int64),
                )
            )
    return SynthScene(
        scene_id=int(data["scene_id"]),
        seed=int(data["seed"]),
        kind=data["kind"],
        width=int(data["width"]),
        height=int(data["height"]),
        background=_color(data["background"]),
        noise_amplitude=int(data["noise_amplitude"]),
        expected_failure=bool(data["expected_failure"]),
        tissue_blobs=tuple(
            TissueBlob(points=np.asarray(b["points"], dtype=np.float64), color=_color(b["color"]))
            for b in data.get("tissue_blobs", [])
        ),
        pen_strokes=tuple(
            PenStroke(
                name=s["name"],
                color=_color(s["color"]),
                points=np.asarray(s["points"], dtype=np.float64),
                width=float(s["width"]),
            )
            for s in data.get("pen_strokes", [])
        ),
        bounding_box=bbox,
        scan_artefacts=tuple(artefacts),
    )


def save_scene(scene: SynthScene, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scene_to_dict(scene), indent=2, sort_keys=True) + "\n")


def load_scene(path: str | Path) -> SynthScene:
    return scene_from_dict(json.loads(Path(path).read_text()))
