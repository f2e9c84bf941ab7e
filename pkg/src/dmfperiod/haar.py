"""One-level 1-D Haar analysis/synthesis with orthonormal filters."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["HaarDecomposition", "haar_dwt1", "haar_idwt1"]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class HaarDecomposition:
    """Approximation (low-pass) and detail (high-pass) coefficients.

    ``padded`` is true when the input had odd length and was extended by
    repeating its last sample before the transform.
    """

    approx: np.ndarray
    detail: np.ndarray
    original_length: int
    padded: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "approx", "detail"])
        for n, (a, d) in enumerate(zip(self.approx.tolist(), self.detail.tolist())):
            writer.writerow([n, repr(a), repr(d)])
        return buf.getvalue()


def haar_dwt1(x) -> HaarDecomposition:
    """Single-level Haar transform of ``x`` (length >= 2), downsampled by 2.

    ``approx[n] = (x[2n] + x[2n+1]) / sqrt(2)`` and
    ``detail[n] = (x[2n] - x[2n+1]) / sqrt(2)``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("haar_dwt1 needs a 1-D vector of length >= 2")
    length = len(x)
    padded = length % 2 == 1
    if padded:
        x = np.append(x, x[-1])
    even, odd = x[0::2], x[1::2]
    return HaarDecomposition(
        approx=(even + odd) * _INV_SQRT2,
        detail=(even - odd) * _INV_SQRT2,
        original_length=length,
        padded=padded,
    )


def haar_idwt1(dec: HaarDecomposition) -> np.ndarray:
    """Invert :func:`haar_dwt1`, truncating any padding."""
    approx = np.asarray(dec.approx, dtype=np.float64)
    detail = np.asarray(dec.detail, dtype=np.float64)
    if approx.shape != detail.shape or approx.ndim != 1:
        raise ValueError("approx and detail must be 1-D vectors of equal length")
    if not 2 * len(approx) - 1 <= dec.original_length <= 2 * len(approx):
        raise ValueError(
            f"original_length {dec.original_length} inconsistent with "
            f"{len(approx)} coefficient pairs"
        )
    x = np.empty(2 * len(approx), dtype=np.float64)
    x[0::2] = (approx + detail) * _INV_SQRT2
    x[1::2] = (approx - detail) * _INV_SQRT2
    return x[:dec.original_length]
