"""Why not just threshold the luminance?  Pen marks.

Renders the same slide with and without pen strokes and runs both
methods.  On the marked slide the luminance threshold happily keeps the
ink (it is dark, like tissue), while the stain-difference method drops
it, because no common ink is simultaneously redder and bluer than green.
"""

from pathlib import Path

import numpy as np

from hetissue import Label, build_scene, render, segment_he, segment_luminance
from hetissue.imageio import write_mask_png, write_rgb_png

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

for color in ("blue", "green", "orange", "black", "pink"):
    scene = build_scene(seed=300, kind="pen", pen_color=color)
    rendered = render(scene)
    pen = rendered.labels == Label.PEN

    he_mask, _ = segment_he(rendered.image)
    lum_mask, _ = segment_luminance(rendered.image)

    he_leak = np.count_nonzero(he_mask.bits & pen)
    lum_leak = np.count_nonzero(lum_mask.bits & pen)
    print(
        f"{color:>6} pen ({np.count_nonzero(pen):5d} px): "
        f"kept by luminance {lum_leak:5d}, kept by stain-difference {he_leak:5d}"
    )

    if color in ("blue", "pink"):
        write_rgb_png(out_dir / f"02_{color}_slide.png", rendered.image)
        write_mask_png(out_dir / f"02_{color}_luminance.png", lum_mask.bits)
        write_mask_png(out_dir / f"02_{color}_stain_diff.png", he_mask.bits)

print()
print("The pink pen is the known blind spot: its ink sits inside the eosin")
print("colour range, so the representation cannot tell it from stain.")
