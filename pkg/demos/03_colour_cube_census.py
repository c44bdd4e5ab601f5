"""How much of the RGB cube can ever be called tissue?

The representation max(r-g, 0) * max(b-g, 0) is positive exactly when a
colour is both redder and bluer than green.  Counting over the whole
24-bit cube, that region is about a third of all colours -- everything
else (greys, greens, oranges, blues with low red, ...) is structurally
excluded before any threshold is chosen.
"""

import time

from hetissue import cube_analysis

# Coarse lattices first: cheap previews of the same census.
for step in (255, 85, 17, 5):
    count, fraction = cube_analysis(step=step)
    n = len(range(0, 256, step))
    print(f"step {step:3d}: lattice {n:3d}^3 -> {count:8d} positive ({100 * fraction:.2f}%)")

# The exact count, enumerating all 2^24 colours.
t0 = time.perf_counter()
count, fraction = cube_analysis(step=1)
elapsed = time.perf_counter() - t0

closed_form = 255 * 256 * 511 // 6  # sum k^2 for k = 1..255
print()
print(f"full cube:  {count} of {2**24} colours positive ({100 * fraction:.4f}%)")
print(f"closed form sum k^2, k=1..255 = {closed_form}  (match: {count == closed_form})")
print(f"enumerated in {elapsed:.2f} s")
