"""Exact spatially weighted local histograms in O(1) per window.

A Manhattan-linear kernel is affine on each closed quadrant of its window,
so the weighted count of a quadrant is ``sx * xramp + sy * yramp + beta *
plain`` evaluated as three rectangle sums. Summing the four quadrants gives
the exact weighted histogram of the whole window regardless of its size.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import SwihError, UnsupportedKernelError, WindowOutOfBoundsError
from .image import WeightedHistogram, normalize
from .kernels import KernelKind, KernelSpec
from .tables import IntegralTableSet, RectRegion, rect_sums


class BorderPolicy(str, Enum):
    STRICT = "strict"
    CLIPPED = "clipped"


@dataclass(frozen=True)
class WindowQuery:
    center: tuple
    kernel: KernelSpec
    border: BorderPolicy = BorderPolicy.STRICT

    def __post_init__(self):
        object.__setattr__(self, "center", (int(self.center[0]), int(self.center[1])))
        object.__setattr__(self, "border", BorderPolicy(self.border))

    @property
    def window(self) -> RectRegion:
        xc, yc = self.center
        k = self.kernel
        return RectRegion(xc - k.hx, yc - k.hy, xc + k.hx, yc + k.hy)

    def check(self, width: int, height: int) -> None:
        xc, yc = self.center
        k = self.kernel
        if self.border is BorderPolicy.STRICT:
            if xc - k.hx < 0 or xc + k.hx >= width or yc - k.hy < 0 or yc + k.hy >= height:
                raise WindowOutOfBoundsError(
                    f"{k.kw}x{k.kh} window at ({xc}, {yc}) does not fit a {width}x{height} image")
        elif not (0 <= xc < width and 0 <= yc < height):
            raise WindowOutOfBoundsError(f"center ({xc}, {yc}) outside {width}x{height} image")


class Quadrant(NamedTuple):
    name: str
    rect: RectRegion
    sx: int
    sy: int
    beta: int


@dataclass(frozen=True)
class QuadrantDecomposition:
    quadrants: tuple

    def __iter__(self):
        return iter(self.quadrants)

    def __getitem__(self, name):
        for q in self.quadrants:
            if q.name == name:
                return q
        raise KeyError(name)


# (name, x offset range, y offset range, sx, sy) for a Manhattan kernel
_QUADRANTS = (
    ("TL", (-1, 0), (-1, 0), +1, +1),
    ("TR", (1, 1), (-1, 0), -1, +1),
    ("BL", (-1, 0), (1, 1), +1, -1),
    ("BR", (1, 1), (1, 1), -1, -1),
)


def _offset_span(spec, h):
    lo, hi = spec
    # lo == -1 means -h, hi == 1 means h; (1, 1) is the strictly positive side
    start = -h if lo == -1 else 1
    stop = 0 if hi == 0 else h
    return start, stop


def _require_affine(k: KernelSpec):
    if not k.quadrant_affine:
        raise UnsupportedKernelError(
            f"{k.label()} kernel is not affine on quadrants; use the wedding-cake baseline")


def decompose(q: WindowQuery) -> QuadrantDecomposition:
    k = q.kernel
    _require_affine(k)
    xc, yc = q.center
    apex = k.hx + k.hy + 1
    quads = []
    for name, xs, ys, sx, sy in _QUADRANTS:
        ax0, ax1 = _offset_span(xs, k.hx)
        ay0, ay1 = _offset_span(ys, k.hy)
        rect = RectRegion(xc + ax0, yc + ay0, xc + ax1, yc + ay1)
        if k.kind is KernelKind.UNIFORM:
            quads.append(Quadrant(name, rect, 0, 0, 1))
        else:
            quads.append(Quadrant(name, rect, sx, sy, apex - sx * xc - sy * yc))
    return QuadrantDecomposition(tuple(quads))


def quadrant_histogram(t: IntegralTableSet, rect: RectRegion, sx: int, sy: int, beta: int) -> WeightedHistogram:
    """Weighted counts of a rectangle whose per-pixel weight is ``sx*x + sy*y + beta``."""
    total = beta * rect_sums(t, "plain", rect)
    if sx:
        total = total + sx * rect_sums(t, "xramp", rect)
    if sy:
        total = total + sy * rect_sums(t, "yramp", rect)
    return WeightedHistogram(total)


def _clip(r: RectRegion, width: int, height: int) -> RectRegion:
    x0, x1 = max(r.x0, 0), min(r.x1, width - 1)
    y0, y1 = max(r.y0, 0), min(r.y1, height - 1)
    if x1 < x0 or y1 < y0:
        # canonical empty rectangle that still passes the bounds check
        x0 = min(x0, width)
        y0 = min(y0, height)
        return RectRegion(x0, y0, x0 - 1, y0 - 1)
    return RectRegion(x0, y0, x1, y1)


def swih_query(t: IntegralTableSet, q: WindowQuery, normalized: bool = False) -> WeightedHistogram:
    """Weighted histogram of one window; exact integers unless ``normalized``."""
    _require_affine(q.kernel)
    q.check(t.width, t.height)
    raw = np.zeros(t.bins, dtype=np.int64)
    for quad in decompose(q):
        rect = quad.rect
        if q.border is BorderPolicy.CLIPPED:
            rect = _clip(rect, t.width, t.height)
        raw += quadrant_histogram(t, rect, quad.sx, quad.sy, quad.beta).values
    hist = WeightedHistogram(raw)
    return normalize(hist) if normalized else hist


# -- batched sweep over every strict center -----------------------------------

def map_shape(width: int, height: int, k: KernelSpec):
    """(rows, cols) of the strict-center grid, raising if the kernel is too big."""
    rows, cols = height - k.kh + 1, width - k.kw + 1
    if rows < 1 or cols < 1:
        raise SwihError(f"{k.kw}x{k.kh} kernel larger than {width}x{height} image")
    return rows, cols


def _row_range(rows, n):
    if rows is None:
        return 0, n
    r0, r1 = rows
    if not 0 <= r0 <= r1 <= n:
        raise SwihError(f"row range {rows} outside [0, {n}]")
    return r0, r1


def rect_sweep(table: np.ndarray, x_off, y_off, hx, hy, r0, r1, cols):
    """Sum of ``table`` over the rectangle at fixed center offsets, for each
    strict center in map rows ``[r0, r1)``; result shape (bins, r1-r0, cols).
    """
    (ax0, ax1), (ay0, ay1) = x_off, y_off
    xa, xb = hx + ax0, hx + ax1 + 1
    ya, yb = hy + ay0 + r0, hy + ay1 + 1 + r0
    n = r1 - r0
    return (table[:, yb:yb + n, xb:xb + cols] - table[:, yb:yb + n, xa:xa + cols]
            - table[:, ya:ya + n, xb:xb + cols] + table[:, ya:ya + n, xa:xa + cols])


def swih_sweep(t: IntegralTableSet, k: KernelSpec, rows=None) -> np.ndarray:
    """Raw weighted histograms for all strict centers, shape (bins, rows, cols).

    Cell ``[:, v, u]`` belongs to the window centered at ``(u + hx, v + hy)``.
    """
    _require_affine(k)
    n_rows, cols = map_shape(t.width, t.height, k)
    r0, r1 = _row_range(rows, n_rows)
    hx, hy = k.hx, k.hy
    if k.kind is KernelKind.UNIFORM:
        return rect_sweep(t.plain, (-hx, hx), (-hy, hy), hx, hy, r0, r1, cols)

    xc = np.arange(hx, hx + cols, dtype=np.int64)[None, None, :]
    yc = np.arange(hy + r0, hy + r1, dtype=np.int64)[None, :, None]
    apex = hx + hy + 1
    out = np.zeros((t.bins, r1 - r0, cols), dtype=np.int64)
    for _, xs, ys, sx, sy in _QUADRANTS:
        x_off = _offset_span(xs, hx)
        y_off = _offset_span(ys, hy)
        pl = rect_sweep(t.plain, x_off, y_off, hx, hy, r0, r1, cols)
        xr = rect_sweep(t.xramp, x_off, y_off, hx, hy, r0, r1, cols)
        yr = rect_sweep(t.yramp, x_off, y_off, hx, hy, r0, r1, cols)
        # sx*x + sy*y + apex - sx*xc - sy*yc, summed over the quadrant
        out += sx * (xr - xc * pl) + sy * (yr - yc * pl) + apex * pl
    return out
