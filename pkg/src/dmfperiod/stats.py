"""
First-order (histogram) statistics and gray-level co-occurrence features.

Entropies use log base 2. Co-occurrence matrices are symmetric: each pixel
pair at the unit displacement is counted in both orders.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields

import numpy as np

from .image import GrayImage

__all__ = [
    "ANGLES",
    "FirstOrderStats",
    "GlcmFeatures",
    "default_levels",
    "features_to_csv",
    "first_order_stats",
    "glcm",
    "glcm_features",
    "percent_deviation",
    "quantize",
]

# (row, col) offsets of the unit displacement per angle in degrees
ANGLES = {0: (0, 1), 45: (-1, 1), 90: (-1, 0), 135: (-1, -1)}

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class FirstOrderStats:
    mean: float
    variance: float
    skewness: float
    kurtosis: float
    energy: float
    entropy: float
    degenerate: bool = False

    def values(self) -> tuple[float, ...]:
        return (self.mean, self.variance, self.skewness, self.kurtosis, self.energy, self.entropy)


@dataclass(frozen=True)
class GlcmFeatures:
    energy: float
    entropy: float
    contrast: float
    homogeneity: float
    correlation: float | None
    angle: int = 0

    def values(self) -> tuple[float | None, ...]:
        return (self.energy, self.entropy, self.contrast, self.homogeneity, self.correlation)


FIRST_ORDER_NAMES = tuple(f.name for f in fields(FirstOrderStats))[:6]
GLCM_NAMES = tuple(f.name for f in fields(GlcmFeatures))[:5]


def _entropy(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def first_order_stats(img: GrayImage) -> FirstOrderStats:
    """Moments, energy and entropy of the normalized gray-value histogram.

    Skewness and kurtosis are standardized moments; for a constant image
    both are reported as 0 and ``degenerate`` is set.
    """
    hist = np.bincount(img.pixels.ravel(), minlength=img.max_value + 1)
    h = hist / hist.sum()
    levels = np.arange(len(h), dtype=np.float64)
    mean = float((levels * h).sum())
    centered = levels - mean
    variance = float((centered**2 * h).sum())
    if variance > 0:
        sigma = np.sqrt(variance)
        skewness = float((centered**3 * h).sum() / sigma**3)
        kurtosis = float((centered**4 * h).sum() / variance**2)
        degenerate = False
    else:
        skewness = kurtosis = 0.0
        degenerate = True
    return FirstOrderStats(
        mean=mean,
        variance=variance,
        skewness=skewness,
        kurtosis=kurtosis,
        energy=float((h**2).sum()),
        entropy=_entropy(h),
        degenerate=degenerate,
    )


def default_levels(max_value: int) -> int:
    return min(max_value + 1, 64)


def quantize(pixels: np.ndarray, max_value: int, levels: int) -> np.ndarray:
    """Uniform binning ``floor(v * levels / (max_value + 1))``; identity if it fits."""
    if max_value + 1 <= levels:
        return np.asarray(pixels, dtype=np.int64)
    return (np.asarray(pixels, dtype=np.int64) * levels) // (max_value + 1)


def glcm(img: GrayImage, angle: int = 0, levels: int | None = None) -> np.ndarray:
    """Normalized symmetric co-occurrence matrix at unit displacement.

    Returns a ``levels x levels`` float array summing to 1.
    """
    if angle not in ANGLES:
        raise ValueError(f"angle must be one of {sorted(ANGLES)}, got {angle!r}")
    if levels is None:
        levels = default_levels(img.max_value)
    if levels < 2:
        raise ValueError(f"levels must be >= 2, got {levels}")
    q = quantize(img.pixels, img.max_value, levels)
    dr, dc = ANGLES[angle]
    h, w = q.shape
    # pixel (r, c) pairs with (r + dr, c + dc)
    r0, r1 = max(0, -dr), h - max(0, dr)
    c0, c1 = max(0, -dc), w - max(0, dc)
    if r1 <= r0 or c1 <= c0:
        raise ValueError(
            f"image of size {h}x{w} has no pixel pairs at angle {angle}"
        )
    a = q[r0:r1, c0:c1].ravel()
    b = q[r0 + dr:r1 + dr, c0 + dc:c1 + dc].ravel()
    counts = np.zeros((levels, levels), dtype=np.int64)
    np.add.at(counts, (a, b), 1)
    counts += counts.T
    return counts / counts.sum()


def glcm_features(P, angle: int = 0) -> GlcmFeatures:
    """Energy, entropy, contrast, homogeneity and correlation of a GLCM.

    Correlation is None when either marginal has zero spread.
    """
    P = np.asarray(P, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("co-occurrence matrix must be square")
    if np.any(P < 0) or abs(P.sum() - 1.0) > _NORM_TOL:
        raise ValueError(f"co-occurrence matrix must be normalized (sum {P.sum()!r})")
    i, j = np.indices(P.shape, dtype=np.float64)
    diff2 = (i - j) ** 2
    mu_i = (i * P).sum()
    mu_j = (j * P).sum()
    var_i = ((i - mu_i) ** 2 * P).sum()
    var_j = ((j - mu_j) ** 2 * P).sum()
    correlation = None
    if var_i > _NORM_TOL and var_j > _NORM_TOL:
        cov = ((i - mu_i) * (j - mu_j) * P).sum()
        correlation = float(np.clip(cov / np.sqrt(var_i * var_j), -1.0, 1.0))
    return GlcmFeatures(
        energy=float((P**2).sum()),
        entropy=_entropy(P),
        contrast=float((diff2 * P).sum()),
        homogeneity=float((P / (1.0 + diff2)).sum()),
        correlation=correlation,
        angle=angle,
    )


def percent_deviation(candidate: float | None, reference: float | None) -> float:
    """``|candidate - reference| / |reference| * 100``.

    A zero reference falls back to the absolute deviation ``|candidate|``.
    Undefined values (a correlation of None) count as 0.
    """
    candidate = 0.0 if candidate is None else float(candidate)
    reference = 0.0 if reference is None else float(reference)
    if reference == 0:
        return abs(candidate)
    return abs(candidate - reference) / abs(reference) * 100.0


def features_to_csv(rows) -> str:
    """CSV with one row per ``(subject, FirstOrderStats, GlcmFeatures)``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["subject", "angle", *FIRST_ORDER_NAMES, *(f"glcm_{n}" for n in GLCM_NAMES)]
    )
    for subject, first, second in rows:
        writer.writerow(
            [subject, second.angle, *first.values(),
             *("" if v is None else v for v in second.values())]
        )
    return buf.getvalue()
