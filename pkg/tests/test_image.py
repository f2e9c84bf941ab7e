import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dmfperiod import (
    GrayImage,
    ImageFormatError,
    NoiseSpec,
    add_noise,
    load_image,
    random_texel,
    save_image,
    tile_texture,
)
from tests.conftest import CLEAN_EXAMPLE


@st.composite
def images(draw, max_side=12):
    max_value = draw(st.sampled_from([1, 7, 255, 1000, 65535]))
    h = draw(st.integers(1, max_side))
    w = draw(st.integers(1, max_side))
    px = draw(arrays(np.int64, (h, w), elements=st.integers(0, max_value)))
    return GrayImage(px, max_value)


class TestGrayImage:
    def test_rejects_out_of_range_pixels(self):
        with pytest.raises(ValueError):
            GrayImage([[0, 8]], max_value=7)
        with pytest.raises(ValueError):
            GrayImage([[-1]], max_value=7)

    def test_rejects_empty_and_bad_max(self):
        with pytest.raises(ValueError):
            GrayImage(np.zeros((0, 3)), 7)
        with pytest.raises(ValueError):
            GrayImage([[0]], max_value=0)

    def test_immutable(self, clean_example):
        with pytest.raises(ValueError):
            clean_example.pixels[0, 0] = 1

    def test_dimensions(self, clean_example):
        assert (clean_example.width, clean_example.height) == (20, 8)


class TestPgm:
    def test_load_clean_example_p2(self):
        text = "P2\n20 8\n7\n" + "\n".join(" ".join(map(str, r)) for r in CLEAN_EXAMPLE)
        img = load_image(text.encode(), "pgm")
        assert img.max_value == 7
        assert img.pixels[0, 0] == 6
        assert img.pixels[0, 1] == 7
        assert img.pixels[3, 0] == 7

    def test_one_pixel(self):
        img = load_image(b"P2 1 1\n1\n0\n", "pgm")
        assert img == GrayImage([[0]], 1)

    def test_comments_are_skipped(self):
        img = load_image(b"P2\n# made by hand\n2 1 # w h\n3\n1 # first\n3\n", "pgm")
        assert img.pixels.tolist() == [[1, 3]]
        assert img.max_value == 3

    def test_p5_short_raster(self):
        data = b"P5\n3 2\n255\n" + bytes(5)
        with pytest.raises(ImageFormatError, match="pixel count mismatch") as info:
            load_image(data, "pgm")
        assert info.value.offset == len(data)

    def test_p2_short_raster(self):
        with pytest.raises(ImageFormatError, match="pixel count mismatch"):
            load_image(b"P2 2 2 7 1 2 3", "pgm")

    def test_bad_magic_reports_offset(self):
        with pytest.raises(ImageFormatError) as info:
            load_image(b"  P6 1 1 255 \x00\x00\x00", "pgm")
        assert info.value.offset == 2

    def test_bad_header_token(self):
        with pytest.raises(ImageFormatError, match="integer"):
            load_image(b"P2 2 x 7 0 0", "pgm")

    def test_truncated_header(self):
        with pytest.raises(ImageFormatError, match="truncated"):
            load_image(b"P5 4", "pgm")

    def test_pixel_above_maxval(self):
        with pytest.raises(ImageFormatError):
            load_image(b"P2 1 1 3 4", "pgm")

    @pytest.mark.parametrize("binary", [True, False])
    def test_clean_example_round_trip(self, clean_example, binary):
        assert load_image(save_image(clean_example, "pgm", binary=binary)) == clean_example

    def test_sixteen_bit_p5(self):
        img = GrayImage([[0, 300], [65535, 7]], 65535)
        data = save_image(img, "pgm", binary=True)
        assert len(data) - data.index(b"65535\n") - 6 == 8
        assert load_image(data) == img

    @settings(max_examples=50, deadline=None)
    @given(images())
    def test_round_trip_property(self, img):
        for binary in (True, False):
            assert load_image(save_image(img, "pgm", binary=binary), "pgm") == img


class TestPng:
    def test_round_trip_keeps_max_value(self, clean_example):
        data = save_image(clean_example, "png")
        assert data[:4] == b"\x89PNG"
        assert load_image(data, "png") == clean_example

    def test_eight_bit(self):
        img = GrayImage(np.arange(256).reshape(16, 16), 255)
        assert load_image(save_image(img, "png")) == img

    def test_range_error(self):
        with pytest.raises(ValueError, match="max_value"):
            save_image(GrayImage([[0]], 65535), "png")

    def test_color_png_rejected(self):
        import io

        from PIL import Image

        buf = io.BytesIO()
        Image.new("RGB", (2, 2)).save(buf, format="PNG")
        with pytest.raises(ImageFormatError, match="color type"):
            load_image(buf.getvalue(), "png")

    def test_garbage(self):
        with pytest.raises(ImageFormatError):
            load_image(b"\x89PNG\r\n\x1a\nnot really", "png")

    @settings(max_examples=30, deadline=None)
    @given(images())
    def test_round_trip_property(self, img):
        if img.max_value > 255:
            return
        assert load_image(save_image(img, "png"), "png") == img


class TestTile:
    def test_constant(self):
        out = tile_texture(GrayImage([[5]], 7), 4, 4)
        assert out == GrayImage(np.full((4, 4), 5), 7)

    def test_clean_example_from_first_five_columns(self):
        texel = GrayImage(CLEAN_EXAMPLE[:, :5], 7)
        assert tile_texture(texel, 20, 8) == GrayImage(CLEAN_EXAMPLE, 7)

    def test_modular_index_oracle(self):
        texel = GrayImage([[1, 2, 3], [4, 5, 6]], 7)  # 2 high, 3 wide
        out = tile_texture(texel, 7, 5)
        assert out.shape == (5, 7)
        for r in range(5):
            for c in range(7):
                assert out.pixels[r, c] == texel.pixels[r % 2, c % 3]

    def test_bad_size(self):
        with pytest.raises(ValueError):
            tile_texture(GrayImage([[1]], 1), 0, 3)

    @settings(max_examples=40, deadline=None)
    @given(images(max_side=5), st.integers(1, 4), st.integers(1, 4))
    def test_aligned_windows_equal_texel(self, texel, kr, kc):
        out = tile_texture(texel, texel.width * kc, texel.height * kr)
        for r0 in range(0, out.height, texel.height):
            for c0 in range(0, out.width, texel.width):
                assert out.crop(r0, c0, texel.height, texel.width) == texel


class TestNoise:
    def test_zero_sigma_identity(self, clean_example):
        assert add_noise(clean_example, NoiseSpec("gaussian", sigma=0, seed=3)) == clean_example

    def test_zero_probability_identity(self, clean_example):
        assert add_noise(clean_example, NoiseSpec("replace", probability=0, seed=3)) == clean_example

    def test_replace_fraction(self):
        img = GrayImage(np.full((100, 100), 128), 255)
        out = add_noise(img, NoiseSpec("replace", probability=0.1, seed=42))
        changed = np.mean(out.pixels != img.pixels)
        assert 0.05 <= changed <= 0.15

    def test_replace_fraction_matches_seeded_draw(self):
        # recount the same draw: hits are those uniform deviates below p
        img = GrayImage(np.full((100, 100), 128), 255)
        out = add_noise(img, NoiseSpec("replace", probability=0.1, seed=42))
        rng = np.random.default_rng(42)
        hits = rng.random((100, 100)) < 0.1
        draws = rng.integers(0, 256, size=(100, 100))
        expected = np.where(hits, draws, 128)
        assert np.array_equal(out.pixels, expected)

    def test_gaussian_clamps_and_keeps_shape(self):
        img = GrayImage(np.array([[0, 255], [0, 255]]), 255)
        out = add_noise(img, NoiseSpec("gaussian", sigma=500, seed=1))
        assert out.shape == img.shape and out.max_value == 255
        assert set(np.unique(out.pixels)) <= {0, 255} | set(range(256))

    def test_gaussian_rounding_half_away_from_zero(self, monkeypatch):
        class FakeRng:
            def normal(self, mean, sigma, size):
                return np.array([[0.5, -0.5, 1.5, -1.5]])

        monkeypatch.setattr(np.random, "default_rng", lambda seed: FakeRng())
        img = GrayImage([[3, 3, 3, 3]], 7)
        out = add_noise(img, NoiseSpec("gaussian", sigma=1, seed=0))
        # 3.5 -> 4, 2.5 -> 3, 4.5 -> 5, 1.5 -> 2
        assert out.pixels.tolist() == [[4, 3, 5, 2]]

    @pytest.mark.parametrize(
        "spec",
        [NoiseSpec("gaussian", sigma=12, seed=9), NoiseSpec("replace", probability=0.3, seed=9)],
    )
    def test_deterministic(self, clean_example, spec):
        assert add_noise(clean_example, spec) == add_noise(clean_example, spec)

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            NoiseSpec("gaussian", sigma=-1)
        with pytest.raises(ValueError):
            NoiseSpec("replace", probability=1.5)
        with pytest.raises(ValueError):
            NoiseSpec("salt")

    def test_parse(self):
        assert NoiseSpec.parse("gaussian:8", seed=2) == NoiseSpec("gaussian", sigma=8.0, seed=2)
        assert NoiseSpec.parse("replace:0.25").probability == 0.25
        for bad in ("gaussian", "gaussian:abc", "pepper:1"):
            with pytest.raises(ValueError):
                NoiseSpec.parse(bad)


def test_random_texel_seeded():
    a = random_texel(6, 9, seed=5, smoothness=1.0)
    assert a == random_texel(6, 9, seed=5, smoothness=1.0)
    assert a.shape == (6, 9)
    assert a.pixels.min() == 0 and a.pixels.max() == 255
