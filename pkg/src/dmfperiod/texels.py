"""
Texel extraction, statistical ranking and tiling synthesis.

Once the periods are known the image is cut into a grid of whole texels
(numbered row-major from 1). Each texel is compared with the whole texture
on six first-order and five co-occurrence (0 degree) features; its score is
the mean percent deviation, lower being more representative.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .image import GrayImage, tile_texture
from .stats import (
    FIRST_ORDER_NAMES,
    GLCM_NAMES,
    GlcmFeatures,
    default_levels,
    first_order_stats,
    glcm,
    glcm_features,
    percent_deviation,
)

__all__ = [
    "TexelCandidate",
    "TexelRect",
    "extract_texel_grid",
    "rank_texels",
    "ranking_to_csv",
    "synthesize",
]


@dataclass(frozen=True)
class TexelRect:
    """Grid position and pixel rectangle of one texel."""

    index: int
    grid_row: int
    grid_col: int
    top: int
    left: int
    height: int
    width: int

    @property
    def rect(self) -> tuple[int, int, int, int]:
        return (self.top, self.left, self.height, self.width)


@dataclass(frozen=True)
class TexelCandidate:
    """A texel with its deviations from the whole texture."""

    texel: TexelRect
    first_order_dev: tuple[float, ...]
    glcm_dev: tuple[float, ...]
    score: float
    extra_glcm: dict[int, GlcmFeatures] = field(default_factory=dict, compare=False)

    @property
    def index(self) -> int:
        return self.texel.index

    @property
    def rect(self) -> tuple[int, int, int, int]:
        return self.texel.rect


def extract_texel_grid(img: GrayImage, period_col: int, period_row: int) -> list[TexelRect]:
    """Whole texels of size ``period_col x period_row``; border remnants are dropped."""
    if not 1 <= period_col <= img.height or not 1 <= period_row <= img.width:
        raise ValueError(
            f"periods {period_col}x{period_row} do not fit image "
            f"{img.height}x{img.width}"
        )
    period_col, period_row = int(period_col), int(period_row)
    rows, cols = img.height // period_col, img.width // period_row
    return [
        TexelRect(
            index=r * cols + c + 1,
            grid_row=r,
            grid_col=c,
            top=r * period_col,
            left=c * period_row,
            height=period_col,
            width=period_row,
        )
        for r in range(rows)
        for c in range(cols)
    ]


def _crop(img: GrayImage, t: TexelRect) -> GrayImage:
    return img.crop(t.top, t.left, t.height, t.width)


def rank_texels(
    img: GrayImage,
    grid: list[TexelRect],
    glcm_levels: int | None = None,
    reference: GrayImage | None = None,
    extra_angles: tuple[int, ...] = (),
) -> list[TexelCandidate]:
    """Score every texel against the texture and sort best first.

    ``reference`` defaults to ``img``. Features at ``extra_angles`` are
    computed for inspection only and do not enter the score. Ties keep the
    lower texel index first.
    """
    if not grid:
        raise ValueError("texel grid is empty")
    if reference is None:
        reference = img
    if glcm_levels is None:
        glcm_levels = default_levels(max(img.max_value, reference.max_value))
    ref_first = first_order_stats(reference).values()
    ref_glcm = glcm_features(glcm(reference, 0, glcm_levels)).values()

    candidates = []
    for t in grid:
        patch = _crop(img, t)
        first = first_order_stats(patch).values()
        second = glcm_features(glcm(patch, 0, glcm_levels)).values()
        first_dev = tuple(percent_deviation(c, r) for c, r in zip(first, ref_first))
        glcm_dev = tuple(percent_deviation(c, r) for c, r in zip(second, ref_glcm))
        extra = {
            a: glcm_features(glcm(patch, a, glcm_levels), angle=a)
            for a in extra_angles
        }
        score = float(np.mean(first_dev + glcm_dev))
        candidates.append(TexelCandidate(t, first_dev, glcm_dev, score, extra))
    return sorted(candidates, key=lambda c: (c.score, c.index))


def synthesize(img: GrayImage, texel, out_width: int, out_height: int) -> GrayImage:
    """Tile the texel cut from ``img`` into an ``out_height x out_width`` image.

    ``texel`` may be a :class:`TexelCandidate`, a :class:`TexelRect` or a
    ``(top, left, height, width)`` tuple.
    """
    if isinstance(texel, TexelCandidate):
        texel = texel.texel
    if isinstance(texel, TexelRect):
        texel = texel.rect
    top, left, height, width = texel
    patch = img.crop(top, left, height, width)
    return tile_texture(patch, out_width, out_height)


def ranking_to_csv(ranked: list[TexelCandidate]) -> str:
    """Table with one row per property and one column per texel (best first)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "property", *(f"#{c.index}" for c in ranked)])
    for k, name in enumerate(FIRST_ORDER_NAMES):
        writer.writerow(["first_order", name, *(c.first_order_dev[k] for c in ranked)])
    for k, name in enumerate(GLCM_NAMES):
        writer.writerow(["second_order", name, *(c.glcm_dev[k] for c in ranked)])
    extra_angles = sorted(ranked[0].extra_glcm) if ranked else []
    for angle in extra_angles:
        for k, name in enumerate(GLCM_NAMES):
            writer.writerow(
                [f"glcm_{angle}", name,
                 *("" if c.extra_glcm[angle].values()[k] is None else c.extra_glcm[angle].values()[k]
                   for c in ranked)]
            )
    writer.writerow(["summary", "score", *(c.score for c in ranked)])
    writer.writerow(["summary", "rank", *range(1, len(ranked) + 1)])
    return buf.getvalue()
