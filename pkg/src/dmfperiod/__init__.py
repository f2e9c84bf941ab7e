"""Texture periodicity from superposed distance matching functions.

Row and column periods of regular, near-regular and noisy grayscale textures
are read off the deep valleys of summed DMFs, optionally after a one-level
Haar decomposition. Texels cut at the detected periods can be ranked
statistically and tiled to synthesize texture.
"""

from .dmf import DmfSeries, summed_col_dmf, summed_dmf, summed_row_dmf, vector_dmf
from .haar import HaarDecomposition, haar_dwt1, haar_idwt1
from .image import (
    GrayImage,
    ImageFormatError,
    NoiseSpec,
    add_noise,
    load_image,
    random_texel,
    read_image,
    save_image,
    tile_texture,
    write_image,
)
from .periodicity import (
    DirectionEstimate,
    PeriodicityEstimate,
    ValleySet,
    analyze_image,
    estimate_direction,
    estimate_period_direct,
    estimate_period_wavelet,
    find_valleys,
)
from .stats import (
    FirstOrderStats,
    GlcmFeatures,
    first_order_stats,
    glcm,
    glcm_features,
    percent_deviation,
)
from .texels import (
    TexelCandidate,
    TexelRect,
    extract_texel_grid,
    rank_texels,
    ranking_to_csv,
    synthesize,
)

__version__ = "0.1.0"
