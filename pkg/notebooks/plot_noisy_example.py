"""
Row period of a small noisy 3-bit image
=======================================

An 8x20 image with gray values 0..7 repeats a 4x5 block. A handful of
pixels have been overwritten, so no row is exactly periodic any more.
Summing the per-row distance matching functions still exposes the
period as evenly spaced deep valleys.
"""

from pathlib import Path

import numpy as np

from dmfperiod import (
    GrayImage,
    estimate_period_direct,
    find_valleys,
    haar_dwt1,
    summed_col_dmf,
    summed_row_dmf,
    vector_dmf,
)
from dmfperiod.cli import dmf_svg

out_dir = Path(__file__).with_name("_output")
out_dir.mkdir(exist_ok=True)

noisy = GrayImage(
    [
        [6, 7, 0, 1, 5, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 7, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 0, 4, 3, 7, 6, 5, 4, 3],
        [6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 1, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 3, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3],
    ],
    max_value=7,
)

###############################################################################
# Each row on its own is noisy: row 0 has a corrupted pixel at column 4, so
# its DMF is no longer zero at displacement 5.

for r in (0, 1):
    print(f"row {r} DMF:", vector_dmf(noisy.pixels[r]).tolist())

###############################################################################
# Summing over all rows gives one series per direction. Its deep valleys sit
# at multiples of the row period, while the envelope shrinks with the
# displacement because fewer pixel pairs overlap.

rows = summed_row_dmf(noisy)
print("summed row DMF:", rows.values.tolist())
valleys = find_valleys(rows)
print("deep valleys:", valleys.indices, "prominence:", valleys.prominence)
print("row period:", estimate_period_direct(rows))

###############################################################################
# The column direction has only 8 displacements, so there is a single
# valley and the period is read off its position.

cols = summed_col_dmf(noisy)
print("summed column DMF:", cols.values.tolist())
print("column period:", estimate_period_direct(cols))

###############################################################################
# A one-level Haar transform halves the series. The approximation keeps the
# valley structure at half resolution; the detail carries the jitter.

dec = haar_dwt1(rows.values)
print("approx:", np.round(dec.approx, 1).tolist())
print("detail:", np.round(dec.detail, 1).tolist())

(out_dir / "noisy_example.row.svg").write_text(
    dmf_svg(rows, valleys.indices, estimate_period_direct(rows))
)
print("plot written to", out_dir / "noisy_example.row.svg")
