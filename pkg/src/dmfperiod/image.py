"""
Grayscale images: representation, PGM/PNG I/O, tiling and noise injection.

A :class:`GrayImage` is an immutable 2-D grid of integer gray values in
``[0, max_value]``. Pixels are stored as a read-only ``int64`` numpy array
of shape ``(height, width)``; row ``r``, column ``c`` is ``pixels[r, c]``.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GrayImage",
    "ImageFormatError",
    "NoiseSpec",
    "add_noise",
    "load_image",
    "random_texel",
    "read_image",
    "save_image",
    "tile_texture",
    "write_image",
]


class ImageFormatError(ValueError):
    """Malformed or unsupported image data.

    ``offset`` is the byte position where the problem was detected, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Rectangular grid of gray values with a declared maximum value."""

    pixels: np.ndarray
    max_value: int = 255

    def __post_init__(self):
        arr = np.array(self.pixels, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"pixels must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        max_value = int(self.max_value)
        if max_value < 1:
            raise ValueError(f"max_value must be >= 1, got {max_value}")
        if arr.min() < 0 or arr.max() > max_value:
            raise ValueError(
                f"pixel values must lie in [0, {max_value}], "
                f"got [{arr.min()}, {arr.max()}]"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)
        object.__setattr__(self, "max_value", max_value)

    @classmethod
    def from_rows(cls, rows, max_value: int) -> GrayImage:
        return cls(np.asarray(rows), max_value)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def transpose(self) -> GrayImage:
        return GrayImage(self.pixels.T, self.max_value)

    def crop(self, top: int, left: int, height: int, width: int) -> GrayImage:
        if top < 0 or left < 0 or height < 1 or width < 1:
            raise ValueError("invalid crop rectangle")
        if top + height > self.height or left + width > self.width:
            raise ValueError(
                f"crop rectangle ({top}, {left}, {height}, {width}) exceeds "
                f"image of size {self.height}x{self.width}"
            )
        return GrayImage(
            self.pixels[top:top + height, left:left + width], self.max_value
        )

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.max_value == other.max_value
            and self.pixels.shape == other.pixels.shape
            and bool(np.array_equal(self.pixels, other.pixels))
        )

    def __hash__(self):
        return hash((self.max_value, self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self):
        return (
            f"GrayImage(height={self.height}, width={self.width}, "
            f"max_value={self.max_value})"
        )


# ---------------------------------------------------------------------------
# PGM

_PGM_TOKEN = re.compile(rb"#[^\n\r]*|\S+")
_WHITESPACE = b" \t\r\n\v\f"


def _pgm_header(data: bytes) -> tuple[bytes, int, int, int, int]:
    """Parse magic, width, height, maxval; return them and the raster offset."""
    tokens = []
    pos = 0
    while len(tokens) < 4:
        m = _PGM_TOKEN.search(data, pos)
        if m is None:
            raise ImageFormatError("truncated PGM header", len(data))
        pos = m.end()
        if m.group().startswith(b"#"):
            continue
        tokens.append((m.group(), m.start()))
    magic, magic_at = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"unsupported magic number {magic!r}", magic_at)
    values = []
    for tok, at in tokens[1:]:
        if not tok.isdigit():
            raise ImageFormatError(f"expected an integer, found {tok!r}", at)
        values.append(int(tok))
    width, height, maxval = values
    if width < 1 or height < 1:
        raise ImageFormatError("image dimensions must be positive", tokens[1][1])
    if not 1 <= maxval <= 65535:
        raise ImageFormatError(f"maxval {maxval} out of range", tokens[3][1])
    # exactly one whitespace byte separates maxval from the raster
    if pos < len(data) and data[pos] in _WHITESPACE:
        pos += 1
    elif magic == b"P5":
        raise ImageFormatError("missing whitespace after maxval", pos)
    return magic, width, height, maxval, pos


def _load_pgm(data: bytes) -> GrayImage:
    magic, width, height, maxval, pos = _pgm_header(data)
    count = width * height
    if magic == b"P5":
        nbytes = 1 if maxval < 256 else 2
        raster = data[pos:]
        if len(raster) < count * nbytes:
            raise ImageFormatError(
                f"pixel count mismatch: header declares {count} pixels, "
                f"raster holds {len(raster) // nbytes}",
                len(data),
            )
        dtype = np.uint8 if nbytes == 1 else np.dtype(">u2")
        pixels = np.frombuffer(raster, dtype=dtype, count=count)
    else:
        values = []
        for m in _PGM_TOKEN.finditer(data, pos):
            tok = m.group()
            if tok.startswith(b"#"):
                continue
            if not tok.isdigit():
                raise ImageFormatError(f"invalid pixel value {tok!r}", m.start())
            values.append(int(tok))
        if len(values) != count:
            raise ImageFormatError(
                f"pixel count mismatch: header declares {count} pixels, "
                f"found {len(values)}",
                len(data),
            )
        pixels = np.array(values, dtype=np.int64)
    pixels = pixels.astype(np.int64).reshape(height, width)
    if pixels.max() > maxval:
        raise ImageFormatError(f"pixel value exceeds maxval {maxval}")
    return GrayImage(pixels, maxval)


def _save_pgm(img: GrayImage, binary: bool) -> bytes:
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n{img.max_value}\n"
    if binary:
        dtype = np.uint8 if img.max_value < 256 else np.dtype(">u2")
        return header.encode("ascii") + img.pixels.astype(dtype).tobytes()
    lines = [" ".join(str(v) for v in row) for row in img.pixels.tolist()]
    return (header + "\n".join(lines) + "\n").encode("ascii")


# ---------------------------------------------------------------------------
# PNG

_PNG_MAXVAL_KEY = "maxval"


def _load_png(data: bytes) -> GrayImage:
    from PIL import Image, UnidentifiedImageError

    try:
        im = Image.open(io.BytesIO(data))
        im.load()
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageFormatError(f"cannot decode PNG: {exc}") from exc
    if im.format != "PNG":
        raise ImageFormatError(f"not a PNG stream ({im.format})", 0)
    if im.mode != "L":
        raise ImageFormatError(
            f"unsupported PNG color type {im.mode!r}; expected 8-bit grayscale"
        )
    pixels = np.asarray(im, dtype=np.int64)
    maxval = 255
    text = getattr(im, "text", {}) or {}
    if _PNG_MAXVAL_KEY in text:
        try:
            maxval = int(text[_PNG_MAXVAL_KEY])
        except ValueError as exc:
            raise ImageFormatError(f"bad maxval text chunk {text[_PNG_MAXVAL_KEY]!r}") from exc
        if not 1 <= maxval <= 255:
            raise ImageFormatError(f"maxval text chunk {maxval} out of range")
        if pixels.max() > maxval:
            raise ImageFormatError(f"pixel value exceeds maxval {maxval}")
    return GrayImage(pixels, maxval)


def _save_png(img: GrayImage) -> bytes:
    from PIL import Image
    from PIL.PngImagePlugin import PngInfo

    if img.max_value > 255:
        raise ValueError(
            f"PNG output supports max_value <= 255, got {img.max_value}"
        )
    info = None
    if img.max_value != 255:
        info = PngInfo()
        info.add_text(_PNG_MAXVAL_KEY, str(img.max_value))
    buf = io.BytesIO()
    Image.fromarray(img.pixels.astype(np.uint8), mode="L").save(
        buf, format="PNG", pnginfo=info
    )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# public I/O


def _sniff(data: bytes) -> str:
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return "png"
    return "pgm"


def load_image(data: bytes, format: str | None = None) -> GrayImage:
    """Decode a PGM (P2/P5) or 8-bit grayscale PNG byte string.

    ``format`` is ``"pgm"`` or ``"png"``; when omitted it is sniffed from the
    leading bytes.
    """
    fmt = (format or _sniff(data)).lower()
    if fmt == "pgm":
        return _load_pgm(data)
    if fmt == "png":
        return _load_png(data)
    raise ValueError(f"unknown image format {format!r}")


def save_image(img: GrayImage, format: str = "pgm", binary: bool = True) -> bytes:
    """Encode ``img``; for PGM, ``binary`` selects P5 over P2.

    A PNG of an image whose max_value is not 255 carries the max value in a
    ``maxval`` text chunk so that loading it back is lossless.
    """
    fmt = format.lower()
    if fmt == "pgm":
        return _save_pgm(img, binary)
    if fmt == "png":
        return _save_png(img)
    raise ValueError(f"unknown image format {format!r}")


def _format_from_path(path) -> str:
    return "png" if str(path).lower().endswith(".png") else "pgm"


def read_image(path) -> GrayImage:
    with open(path, "rb") as fh:
        data = fh.read()
    return load_image(data)


def write_image(img: GrayImage, path, binary: bool = True) -> None:
    with open(path, "wb") as fh:
        fh.write(save_image(img, _format_from_path(path), binary=binary))


# ---------------------------------------------------------------------------
# synthesis helpers


def tile_texture(texel: GrayImage, out_width: int, out_height: int) -> GrayImage:
    """Repeat ``texel`` to fill an ``out_height`` x ``out_width`` image.

    Partial copies at the right and bottom edges are cropped.
    """
    if out_width < 1 or out_height < 1:
        raise ValueError("output dimensions must be >= 1")
    reps = (-(-out_height // texel.height), -(-out_width // texel.width))
    tiled = np.tile(texel.pixels, reps)[:out_height, :out_width]
    return GrayImage(tiled, texel.max_value)


NOISE_KINDS = ("gaussian", "replace")


def random_texel(
    height: int,
    width: int,
    seed: int = 0,
    max_value: int = 255,
    smoothness: float = 0.0,
) -> GrayImage:
    """Seeded random texel, optionally low-pass filtered for spatial correlation.

    With ``smoothness > 0`` white noise is blurred by a periodic Gaussian of
    that standard deviation (pixels), so the texel tiles seamlessly, and then
    stretched to the full gray range.
    """
    rng = np.random.default_rng(seed)
    if smoothness <= 0:
        return GrayImage(rng.integers(0, max_value + 1, size=(height, width)), max_value)
    from scipy.ndimage import gaussian_filter

    field_ = gaussian_filter(rng.standard_normal((height, width)), smoothness, mode="wrap")
    lo, hi = field_.min(), field_.max()
    if hi == lo:
        return GrayImage(np.zeros((height, width), dtype=np.int64), max_value)
    scaled = np.rint((field_ - lo) / (hi - lo) * max_value).astype(np.int64)
    return GrayImage(scaled, max_value)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise model for :func:`add_noise`.

    ``kind`` is ``"gaussian"`` (additive, std ``sigma`` gray levels) or
    ``"replace"`` (each pixel replaced with ``probability`` by a uniform
    gray value). Random draws come from numpy's PCG64 generator seeded with
    ``seed``.
    """

    kind: str
    sigma: float = 0.0
    probability: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if self.kind == "gaussian" and not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.kind == "replace" and not 0 <= self.probability <= 1:
            raise ValueError(f"probability must be in [0, 1], got {self.probability}")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> NoiseSpec:
        """Parse ``gaussian:<sigma>`` or ``replace:<prob>``."""
        kind, sep, value = text.partition(":")
        if not sep:
            raise ValueError(f"noise spec must look like 'kind:value', got {text!r}")
        try:
            number = float(value)
        except ValueError:
            raise ValueError(f"invalid noise parameter {value!r}") from None
        kind = kind.strip().lower()
        if kind == "gaussian":
            return cls("gaussian", sigma=number, seed=seed)
        if kind == "replace":
            return cls("replace", probability=number, seed=seed)
        raise ValueError(f"unknown noise kind {kind!r}")


def add_noise(img: GrayImage, spec: NoiseSpec) -> GrayImage:
    """Return a noisy copy of ``img``; deterministic for a given ``spec.seed``."""
    rng = np.random.default_rng(spec.seed)
    pixels = img.pixels
    if spec.kind == "gaussian":
        if spec.sigma == 0:
            return img
        noisy = pixels + rng.normal(0.0, spec.sigma, size=pixels.shape)
        # round half away from zero
        noisy = np.sign(noisy) * np.floor(np.abs(noisy) + 0.5)
        out = np.clip(noisy, 0, img.max_value).astype(np.int64)
    else:
        hit = rng.random(pixels.shape) < spec.probability
        draws = rng.integers(0, img.max_value + 1, size=pixels.shape)
        out = np.where(hit, draws, pixels)
    return GrayImage(out, img.max_value)
