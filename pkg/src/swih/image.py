"""Grayscale images, bin quantization, histogram values and PGM I/O."""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import PGMError, SwihError, ZeroMassError


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image stored row-major as a (height, width) array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise SwihError(f"image must be a non-empty 2-D grid, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise SwihError(f"pixels must be integers, got {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise SwihError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class Quantizer:
    """Uniform partition of [0, 256) into ``bins`` equal-width intervals."""

    bins: int = 16

    def __post_init__(self):
        if int(self.bins) != self.bins or self.bins < 1:
            raise SwihError(f"bin count must be a positive integer, got {self.bins}")

    def __call__(self, values):
        v = np.asarray(values, dtype=np.int64)
        return (v * self.bins) // 256


@dataclass(frozen=True)
class FeatureImage:
    """Per-pixel bin indices in [0, bins-1], shape (height, width)."""

    data: np.ndarray
    bins: int

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.intp)
        if arr.ndim != 2:
            raise SwihError("feature image must be 2-D")
        if arr.size and (arr.min() < 0 or arr.max() >= self.bins):
            raise SwihError("bin index out of range")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __eq__(self, other):
        if not isinstance(other, FeatureImage):
            return NotImplemented
        return self.bins == other.bins and np.array_equal(self.data, other.data)

    __hash__ = None

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class WeightedHistogram:
    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = np.asarray(self.values)
        if arr.ndim != 1 or arr.size < 1:
            raise SwihError("histogram must be a non-empty 1-D vector")
        if not (np.issubdtype(arr.dtype, np.integer) or np.issubdtype(arr.dtype, np.floating)):
            raise SwihError(f"unsupported histogram dtype {arr.dtype}")
        if np.issubdtype(arr.dtype, np.integer):
            arr = arr.astype(np.int64, copy=True)
        else:
            arr = arr.astype(np.float64, copy=True)
        if np.any(arr < 0):
            raise SwihError("histogram values must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def bins(self) -> int:
        return self.values.size

    def total(self):
        return self.values.sum()

    def __eq__(self, other):
        if not isinstance(other, WeightedHistogram):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(self.values, other.values)

    __hash__ = None


def quantize_image(img: GrayImage, q: Quantizer) -> FeatureImage:
    return FeatureImage(q(img.pixels), q.bins)


def normalize(h: WeightedHistogram) -> WeightedHistogram:
    """L1-normalize; an all-zero histogram raises :class:`ZeroMassError`."""
    values = np.asarray(h.values, dtype=np.float64)
    mass = values.sum()
    if mass <= 0:
        raise ZeroMassError("cannot normalize a histogram with zero total mass")
    return WeightedHistogram(values / mass, normalized=True)


# -- binary PGM (P5, maxval 255) ---------------------------------------------

_TOKEN = re.compile(rb"\S+")


def _header_tokens(buf: bytes, count: int):
    """Return ``count`` header tokens and the offset just past the last one.

    Comment lines start with '#' and run to end of line.
    """
    tokens = []
    pos = 0
    n = len(buf)
    while len(tokens) < count:
        while pos < n and buf[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise PGMError("truncated PGM header")
        if buf[pos:pos + 1] == b"#":
            eol = buf.find(b"\n", pos)
            if eol < 0:
                raise PGMError("truncated PGM header")
            pos = eol + 1
            continue
        m = _TOKEN.match(buf, pos)
        tok = m.group(0)
        if b"#" in tok:
            tok = tok[: tok.index(b"#")]
            pos = pos + len(tok)
        else:
            pos = m.end()
        tokens.append(tok)
    return tokens, pos


def decode_pgm(buf: bytes) -> GrayImage:
    tokens, pos = _header_tokens(buf, 4)
    magic, w, h, maxval = tokens
    if magic != b"P5":
        raise PGMError(f"not a binary PGM (magic {magic!r})")
    try:
        width, height, maxv = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise PGMError("malformed PGM header") from exc
    if width < 1 or height < 1:
        raise PGMError("PGM dimensions must be positive")
    if maxv != 255:
        raise PGMError(f"only maxval 255 is supported, got {maxv}")
    if pos >= len(buf) or not buf[pos:pos + 1].isspace():
        raise PGMError("missing whitespace after PGM header")
    pos += 1
    raw = buf[pos:pos + width * height]
    if len(raw) != width * height:
        raise PGMError(f"expected {width * height} pixel bytes, found {len(raw)}")
    return GrayImage(np.frombuffer(raw, dtype=np.uint8).reshape(height, width))


def encode_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes(order="C")


def read_pgm(path) -> GrayImage:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise PGMError(f"cannot read {path}: {exc.strerror}") from exc
    return decode_pgm(data)


def write_pgm(path, img: GrayImage) -> None:
    Path(path).write_bytes(encode_pgm(img))
