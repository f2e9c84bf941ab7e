"""
Ranking texels and re-synthesizing a texture
============================================

Once the periods are known the texture is cut into a grid of texels.
Every texel is compared with the whole image on six histogram
statistics and five co-occurrence features, and the texel with the
smallest mean percent deviation is tiled into a larger output.
"""

from pathlib import Path

import numpy as np

from dmfperiod import (
    GrayImage,
    NoiseSpec,
    add_noise,
    analyze_image,
    extract_texel_grid,
    random_texel,
    rank_texels,
    ranking_to_csv,
    synthesize,
    tile_texture,
    write_image,
)

out_dir = Path(__file__).with_name("_output")
out_dir.mkdir(exist_ok=True)

texel = random_texel(12, 16, seed=5, smoothness=1.0)
texture = tile_texture(texel, 16 * 6, 12 * 5)

###############################################################################
# Spoil one texel with replace-uniform noise so that the ranking has
# something to find.

grid = extract_texel_grid(texture, 12, 16)
victim = grid[13]
patch = add_noise(texture.crop(*victim.rect), NoiseSpec("replace", probability=0.3, seed=2))
pixels = texture.pixels.copy()
pixels[victim.top:victim.top + victim.height, victim.left:victim.left + victim.width] = patch.pixels
texture = GrayImage(pixels, texture.max_value)

###############################################################################
# The periods are still recovered from the damaged texture.

est = analyze_image(texture)
print("texel size (P_C x P_R):", est.texel_size)

ranked = rank_texels(texture, extract_texel_grid(texture, *est.texel_size))
print("best texels:", [c.index for c in ranked[:5]])
print("worst texel:", ranked[-1].index, "(spoiled:", victim.index, ")")
print("score spread:", np.round([ranked[0].score, ranked[-1].score], 3).tolist())

(out_dir / "ranking.csv").write_text(ranking_to_csv(ranked))

###############################################################################
# Tile the best texel into a 320x200 image and confirm its period
# structure.

big = synthesize(texture, ranked[0], 320, 200)
write_image(big, out_dir / "synthesized.png")
print("re-analysis of synthesized image:", analyze_image(big, "direct").texel_size)
