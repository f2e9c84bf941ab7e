"""
Periodicity estimation from superposed DMF series.

Deep valleys of a superposed DMF mark multiples of the period. A valley is
"deep" when its topographic prominence (the depth below the lower of the two
highest points met while walking outwards to the nearest lower sample) is at
least ``min_prominence_fraction`` of the series range. The period is the
median spacing between successive deep valleys, either read directly off
the DMF or off the approximation coefficients of a one-level Haar transform
of it (the latter doubled to undo the downsampling).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from .dmf import DmfSeries, summed_col_dmf, summed_row_dmf
from .haar import haar_dwt1
from .image import GrayImage

__all__ = [
    "DEFAULT_PROMINENCE",
    "DirectionEstimate",
    "PeriodicityEstimate",
    "ValleySet",
    "analyze_image",
    "estimate_direction",
    "estimate_period_direct",
    "estimate_period_wavelet",
    "find_valleys",
]

DEFAULT_PROMINENCE = 0.05
# auto mode falls back to the wavelet route above this spacing dispersion
AUTO_DISPERSION_LIMIT = 0.25
# share of the series end whose valleys are left out of the spacing median
TAIL_FRACTION = 0.10
MODES = ("direct", "wavelet", "auto")


@dataclass(frozen=True)
class ValleySet:
    indices: tuple[int, ...] = ()
    values: tuple[float, ...] = ()
    prominence: tuple[float, ...] = ()

    def __len__(self):
        return len(self.indices)

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "values": list(self.values),
            "prominence": list(self.prominence),
        }


def _prominence(series: np.ndarray, start: int, stop: int) -> float:
    """Prominence of the flat valley ``series[start:stop+1]``."""
    v = series[start]
    left = start - 1
    left_max = series[left]
    while left > 0 and series[left - 1] >= v:
        left -= 1
        left_max = max(left_max, series[left])
    right = stop + 1
    right_max = series[right]
    while right < len(series) - 1 and series[right + 1] >= v:
        right += 1
        right_max = max(right_max, series[right])
    return float(min(left_max, right_max) - v)


def find_valleys(series, min_prominence_fraction: float = DEFAULT_PROMINENCE) -> ValleySet:
    """Interior local minima of ``series`` whose prominence is large enough.

    A run of equal values flanked by strictly larger neighbours counts as
    one minimum, reported at its leftmost index. Index 0 never counts.
    The threshold is ``min_prominence_fraction * (max - min)``.
    """
    s = _values(series)
    if s.ndim != 1 or len(s) < 3:
        raise ValueError("find_valleys needs a 1-D series of length >= 3")
    if not 0 < min_prominence_fraction <= 1:
        raise ValueError(
            f"min_prominence_fraction must be in (0, 1], got {min_prominence_fraction}"
        )
    span = s.max() - s.min()
    if span == 0:
        return ValleySet()
    threshold = min_prominence_fraction * float(span)
    indices, values, proms = [], [], []
    n = len(s)
    i = 1
    while i < n - 1:
        j = i
        while j + 1 < n and s[j + 1] == s[i]:
            j += 1
        if j < n - 1 and s[i - 1] > s[i] and s[j + 1] > s[i]:
            prom = _prominence(s, i, j)
            if prom >= threshold:
                indices.append(i)
                values.append(s[i].item())
                proms.append(prom)
        i = j + 1
    return ValleySet(tuple(indices), tuple(values), tuple(proms))


def _period_from_valleys(indices, length: int) -> tuple[int | None, float]:
    """Median valley spacing and its dispersion, in index units."""
    if not indices:
        return None, math.inf
    if len(indices) == 1:
        return int(indices[0]), 0.0
    tail_start = length - math.ceil(TAIL_FRACTION * length)
    kept = [i for i in indices if i < tail_start]
    if len(kept) >= 3:
        indices = kept
    spacings = np.diff(indices)
    period = int(statistics.median_low(spacings.tolist()))
    # the first valley sits one period from the origin: fold it into the check
    deviations = np.abs(np.append(spacings, indices[0]) - period)
    return period, float(deviations.max() / period)


@dataclass(frozen=True)
class DirectionEstimate:
    """Period along one direction with the evidence behind it."""

    direction: str
    period: int | None
    method: str
    valleys: ValleySet
    spacing_dispersion: float
    wavelet_valleys: ValleySet | None = None

    def to_dict(self) -> dict:
        out = {
            "period": self.period,
            "method": self.method,
            "valleys": self.valleys.to_dict(),
            "spacing_dispersion": _finite_or_none(self.spacing_dispersion),
        }
        if self.wavelet_valleys is not None:
            out["wavelet_valleys"] = self.wavelet_valleys.to_dict()
        return out


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def _values(series) -> np.ndarray:
    if isinstance(series, DmfSeries):
        return series.values
    return np.asarray(series)


DEPTH_TOLERANCE = 0.25


def _deep(values: np.ndarray, valleys: ValleySet, addends: np.ndarray) -> list[int]:
    """Valleys whose per-addend mean sits near the lowest valley's.

    Dividing by the number of squared differences behind each value removes
    the linear decay of the DMF, so valleys at multiples of the period line
    up near a common floor while dips inside a period stay above it.
    """
    if len(valleys) < 2:
        return list(valleys.indices)
    mean = np.asarray(values, dtype=np.float64) / addends
    half = max(2, (len(values) + 1) // 2)
    level = mean[1:half].mean()
    floor = min(mean[i] for i in valleys.indices)
    cut = floor + DEPTH_TOLERANCE * max(level - floor, 0.0)
    return [i for i in valleys.indices if mean[i] <= cut]


def _direct(values, direction, frac) -> DirectionEstimate:
    valleys = find_valleys(values, frac)
    addends = len(values) - np.arange(len(values), dtype=np.float64)
    deep = _deep(values, valleys, addends)
    period, dispersion = _period_from_valleys(deep, len(values))
    return DirectionEstimate(direction, period, "direct", valleys, dispersion)


def _wavelet(values, direction, frac, direct_valleys=None) -> DirectionEstimate:
    approx = haar_dwt1(values).approx
    wvalleys = find_valleys(approx, frac)
    # each coefficient pools two DMF samples with L-2n and L-2n-1 addends
    addends = len(values) - 2 * np.arange(len(approx), dtype=np.float64) - 0.5
    deep = _deep(approx, wvalleys, np.maximum(addends, 0.5))
    half, dispersion = _period_from_valleys(deep, len(approx))
    period = None if half is None else 2 * half
    if period is not None and period >= len(values):
        period = None
    if direct_valleys is None:
        direct_valleys = find_valleys(values, frac)
    return DirectionEstimate(
        direction, period, "wavelet", direct_valleys, dispersion, wavelet_valleys=wvalleys
    )


def estimate_period_direct(series, min_prominence_fraction: float = DEFAULT_PROMINENCE) -> int | None:
    """Period read directly from the valleys of a DMF series, or None."""
    values = _values(series)
    return _direct(values, "row", min_prominence_fraction).period


def estimate_period_wavelet(series, min_prominence_fraction: float = DEFAULT_PROMINENCE) -> int | None:
    """Period from the valleys of the Haar approximation of a DMF series.

    Odd periods come out one pixel off, since a valley can only be located
    to within a coefficient pair.
    """
    values = _values(series)
    if len(values) < 4:
        raise ValueError("wavelet estimate needs a series of length >= 4")
    if len(values) < 5:
        return None
    return _wavelet(values, "row", min_prominence_fraction).period


def _refine(values: np.ndarray, period: int) -> int:
    """Pick the lowest DMF value among period-1, period, period+1."""
    candidates = [p for p in (period - 1, period, period + 1) if 1 <= p < len(values)]
    # min() keeps the first (smallest) candidate on ties
    return min(candidates, key=lambda p: values[p])


def estimate_direction(
    series: DmfSeries,
    mode: str = "auto",
    min_prominence_fraction: float = DEFAULT_PROMINENCE,
) -> DirectionEstimate:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    values = series.values
    direct = _direct(values, series.direction, min_prominence_fraction)
    if mode == "direct":
        return direct
    if len(values) < 5:
        # too short for a meaningful downsampled series
        return direct
    wavelet = _wavelet(values, series.direction, min_prominence_fraction, direct.valleys)
    if mode == "wavelet":
        return wavelet
    if direct.period is not None and direct.spacing_dispersion <= AUTO_DISPERSION_LIMIT:
        return direct
    if wavelet.period is None:
        return direct
    refined = _refine(values, wavelet.period)
    return DirectionEstimate(
        series.direction,
        refined,
        "wavelet",
        direct.valleys,
        wavelet.spacing_dispersion,
        wavelet_valleys=wavelet.wavelet_valleys,
    )


@dataclass(frozen=True)
class PeriodicityEstimate:
    """Row and column periods of an image.

    ``period_row`` is the repeat length along a row (texel width) and
    ``period_col`` the repeat length along a column (texel height), so the
    texel size reads ``period_col x period_row``.
    """

    row: DirectionEstimate
    col: DirectionEstimate
    mode: str = "auto"
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def period_row(self) -> int | None:
        return self.row.period

    @property
    def period_col(self) -> int | None:
        return self.col.period

    @property
    def texel_size(self) -> tuple[int | None, int | None]:
        return self.period_col, self.period_row

    @property
    def method(self) -> str:
        if "wavelet" in (self.row.method, self.col.method):
            return "wavelet"
        return "direct"

    @property
    def row_valleys(self) -> ValleySet:
        return self.row.valleys

    @property
    def col_valleys(self) -> ValleySet:
        return self.col.valleys


def analyze_image(
    img: GrayImage,
    mode: str = "auto",
    min_prominence_fraction: float = DEFAULT_PROMINENCE,
) -> PeriodicityEstimate:
    """Estimate row and column periods of ``img`` (at least 4x4)."""
    if img.width < 4 or img.height < 4:
        raise ValueError(f"image must be at least 4x4, got {img.height}x{img.width}")
    row = estimate_direction(summed_row_dmf(img), mode, min_prominence_fraction)
    col = estimate_direction(summed_col_dmf(img), mode, min_prominence_fraction)
    return PeriodicityEstimate(row, col, mode)
