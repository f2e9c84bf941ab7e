"""
Distance matching functions (DMF).

For a vector ``g`` of length ``L`` the DMF at displacement ``delta`` is the
sum of squared differences between ``g`` and its shifted copy over the
overlap::

    d(delta) = sum_{i=0}^{L-delta-1} (g[i] - g[i+delta])**2

Summing the DMFs of every row (or every column) of an image gives the
superposed DMF, whose deep valleys sit at multiples of the row (column)
period. All values are exact integers.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .image import GrayImage

__all__ = [
    "DmfSeries",
    "summed_col_dmf",
    "summed_dmf",
    "summed_row_dmf",
    "vector_dmf",
]

DIRECTIONS = ("row", "column")


@dataclass(frozen=True, eq=False)
class DmfSeries:
    """Superposed DMF values indexed by displacement, ``values[0] == 0``."""

    direction: str
    values: np.ndarray

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        values = np.array(self.values, dtype=np.int64, copy=True)
        if values.ndim != 1:
            raise ValueError("DMF values must be one-dimensional")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, DmfSeries):
            return NotImplemented
        return self.direction == other.direction and np.array_equal(self.values, other.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["delta", "value"])
        writer.writerows(enumerate(self.values.tolist()))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, direction: str) -> DmfSeries:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["delta", "value"]:
            raise ValueError("DMF CSV must start with header 'delta,value'")
        values = []
        for expected, row in enumerate(rows[1:]):
            if int(row[0]) != expected:
                raise ValueError(f"DMF CSV rows must be consecutive from 0; got delta {row[0]}")
            values.append(int(row[1]))
        return cls(direction, np.array(values, dtype=np.int64))


def _dmf_along_last_axis(a: np.ndarray) -> np.ndarray:
    """DMF of every 1-D slice along the last axis, summed over the others."""
    a = np.asarray(a, dtype=np.int64)
    length = a.shape[-1]
    out = np.zeros(length, dtype=np.int64)
    for delta in range(1, length):
        diff = a[..., :length - delta] - a[..., delta:]
        out[delta] = np.sum(diff * diff)
    return out


# above this length the L x L window matrix costs more than it saves
_WINDOW_MAX = 2048


def vector_dmf(g) -> np.ndarray:
    """DMF of a single integer vector, for displacements ``0 .. len(g)-1``."""
    g = np.asarray(g)
    if g.ndim != 1 or len(g) < 2:
        raise ValueError("vector_dmf needs a 1-D vector of length >= 2")
    if not np.issubdtype(g.dtype, np.integer):
        raise ValueError(f"vector_dmf needs integer input, got dtype {g.dtype}")
    g = g.astype(np.int64)
    n = len(g)
    if n > _WINDOW_MAX:
        return _dmf_along_last_axis(g)
    # shifted[delta, i] = g[i + delta]; positions past the end compare g with itself
    padded = np.concatenate([g, g])
    shifted = np.lib.stride_tricks.sliding_window_view(padded, n)[:n]
    diff = shifted - g
    diff[np.add.outer(np.arange(n), np.arange(n)) >= n] = 0
    return np.sum(diff * diff, axis=1)


def summed_row_dmf(img: GrayImage) -> DmfSeries:
    """Sum of the DMFs of all rows; length ``img.width``."""
    if img.width < 2:
        raise ValueError(f"row DMF needs width >= 2, got {img.width}")
    return DmfSeries("row", _dmf_along_last_axis(img.pixels))


def summed_col_dmf(img: GrayImage) -> DmfSeries:
    """Sum of the DMFs of all columns; length ``img.height``."""
    if img.height < 2:
        raise ValueError(f"column DMF needs height >= 2, got {img.height}")
    return DmfSeries("column", _dmf_along_last_axis(img.pixels.T))


def summed_dmf(img: GrayImage, direction: str) -> DmfSeries:
    if direction == "row":
        return summed_row_dmf(img)
    if direction == "column":
        return summed_col_dmf(img)
    raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
