"""Plain and ramp-weighted integral histograms with O(1) rectangle sums.

Three zero-padded cumulative tables are kept per bin: ``plain`` (weight 1),
``xramp`` (weight = pixel column) and ``yramp`` (weight = pixel row). Any
weight that is affine in pixel coordinates, in particular the four
directional ramps, is a linear combination of these.

Arrays are bin-major with shape ``(bins, H + 1, W + 1)`` and are indexed
``table[bin, y, x]``; row/column 0 is the zero padding.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import BoundsError, CapacityError, SwihError
from .image import FeatureImage

TABLE_NAMES = ("plain", "xramp", "yramp")
DUMP_MAGIC = b"SWIH1"
DEFAULT_BUDGET_MB = 2048


class Direction(str, Enum):
    SE = "SE"
    SW = "SW"
    NE = "NE"
    NW = "NW"


@dataclass(frozen=True)
class RectRegion:
    """Inclusive pixel rectangle ``[x0, x1] x [y0, y1]``.

    ``x1 == x0 - 1`` (or ``y1 == y0 - 1``) denotes an empty rectangle; only
    quadrant bookkeeping produces those.
    """

    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def empty(self) -> bool:
        return self.x1 < self.x0 or self.y1 < self.y0

    @property
    def area(self) -> int:
        return max(self.x1 - self.x0 + 1, 0) * max(self.y1 - self.y0 + 1, 0)

    def pixels(self):
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield x, y


def memory_budget_bytes() -> int:
    mb = os.environ.get("SWIH_MEM_BUDGET_MB", "")
    try:
        mb = float(mb) if mb else DEFAULT_BUDGET_MB
    except ValueError:
        raise SwihError(f"SWIH_MEM_BUDGET_MB must be a number, got {mb!r}") from None
    return int(mb * 1024 * 1024)


def required_bytes(width: int, height: int, bins: int) -> int:
    return 3 * bins * (width + 1) * (height + 1) * 8


class IntegralTableSet:
    """Immutable plain/xramp/yramp integral histograms of a feature image."""

    def __init__(self, plain: np.ndarray, xramp: np.ndarray, yramp: np.ndarray):
        if not (plain.shape == xramp.shape == yramp.shape) or plain.ndim != 3:
            raise SwihError("table shapes disagree")
        for arr in (plain, xramp, yramp):
            arr.setflags(write=False)
        self.plain = plain
        self.xramp = xramp
        self.yramp = yramp
        self.bins = plain.shape[0]
        self.height = plain.shape[1] - 1
        self.width = plain.shape[2] - 1

    def table(self, name: str) -> np.ndarray:
        if name not in TABLE_NAMES:
            raise SwihError(f"unknown table {name!r}")
        return getattr(self, name)

    def cells(self, name: str, x: int, y: int) -> np.ndarray:
        """All-bin vector of one padded cell; every query goes through here."""
        return self.table(name)[:, y, x]

    def instrumented(self) -> "CountingTableSet":
        return CountingTableSet(self.plain, self.xramp, self.yramp)

    @property
    def nbytes(self) -> int:
        return self.plain.nbytes + self.xramp.nbytes + self.yramp.nbytes


class CountingTableSet(IntegralTableSet):
    """Shares the arrays of a table set and counts per-bin cell reads."""

    def __init__(self, plain, xramp, yramp):
        super().__init__(plain, xramp, yramp)
        self.reads = 0

    def cells(self, name, x, y):
        self.reads += self.bins
        return super().cells(name, x, y)


def build_tables(fi: FeatureImage, budget_bytes: int | None = None) -> IntegralTableSet:
    """Cumulative plain, x-ramp and y-ramp histograms, exact int64."""
    h, w, b = fi.height, fi.width, fi.bins
    if budget_bytes is None:
        budget_bytes = memory_budget_bytes()
    need = required_bytes(w, h, b)
    if need > budget_bytes:
        raise CapacityError(need, budget_bytes)

    tables = []
    onehot = fi.data[None, :, :] == np.arange(b)[:, None, None]
    ramps = (None, np.arange(w, dtype=np.int64)[None, None, :],
             np.arange(h, dtype=np.int64)[None, :, None])
    for ramp in ramps:
        t = np.zeros((b, h + 1, w + 1), dtype=np.int64)
        weights = onehot.astype(np.int64) if ramp is None else onehot * ramp
        np.cumsum(weights, axis=1, out=t[:, 1:, 1:])
        np.cumsum(t[:, 1:, 1:], axis=2, out=t[:, 1:, 1:])
        tables.append(t)
    return IntegralTableSet(*tables)


def _check_rect(t: IntegralTableSet, r: RectRegion):
    if not (0 <= r.x0 <= r.x1 + 1 and r.x1 < t.width and 0 <= r.y0 <= r.y1 + 1 and r.y1 < t.height):
        raise BoundsError(f"rectangle {r} outside {t.width}x{t.height} image")


def rect_sums(t: IntegralTableSet, name: str, r: RectRegion) -> np.ndarray:
    """Four-corner rule for every bin at once."""
    _check_rect(t, r)
    return (t.cells(name, r.x1 + 1, r.y1 + 1) - t.cells(name, r.x0, r.y1 + 1)
            - t.cells(name, r.x1 + 1, r.y0) + t.cells(name, r.x0, r.y0))


def rect_sum(t: IntegralTableSet, name: str, r: RectRegion, bin: int) -> int:
    if not 0 <= bin < t.bins:
        raise BoundsError(f"bin {bin} outside [0, {t.bins})")
    return int(rect_sums(t, name, r)[bin])


def directional_table_value(t: IntegralTableSet, direction, x: int, y: int, bin: int) -> int:
    """Directional weighted integral histogram at padded cell ``(x, y)``.

    The per-pixel weights are SE: x + y, SW: (W-1-x) + y, NE: x + (H-1-y),
    NW: (W-1-x) + (H-1-y).
    """
    direction = Direction(direction)
    if not (0 <= x <= t.width and 0 <= y <= t.height):
        raise BoundsError(f"cell ({x}, {y}) outside padded {t.width + 1}x{t.height + 1} table")
    if not 0 <= bin < t.bins:
        raise BoundsError(f"bin {bin} outside [0, {t.bins})")
    p = int(t.plain[bin, y, x])
    xr = int(t.xramp[bin, y, x])
    yr = int(t.yramp[bin, y, x])
    wm, hm = t.width - 1, t.height - 1
    if direction is Direction.SE:
        return xr + yr
    if direction is Direction.SW:
        return wm * p - xr + yr
    if direction is Direction.NE:
        return xr + hm * p - yr
    return (wm + hm) * p - xr - yr


def save_tables(path, t: IntegralTableSet) -> None:
    with open(path, "wb") as fh:
        fh.write(DUMP_MAGIC)
        fh.write(struct.pack("<III", t.width, t.height, t.bins))
        for name in TABLE_NAMES:
            fh.write(np.ascontiguousarray(t.table(name), dtype="<i8").tobytes())


def load_tables(path) -> IntegralTableSet:
    raw = Path(path).read_bytes()
    if raw[:5] != DUMP_MAGIC:
        raise SwihError(f"{path}: not a SWIH1 table dump")
    w, h, b = struct.unpack_from("<III", raw, 5)
    n = b * (h + 1) * (w + 1)
    body = np.frombuffer(raw, dtype="<i8", offset=17)
    if body.size != 3 * n:
        raise SwihError(f"{path}: expected {3 * n} table entries, found {body.size}")
    arrs = [body[i * n:(i + 1) * n].astype(np.int64).reshape(b, h + 1, w + 1) for i in range(3)]
    return IntegralTableSet(*arrs)
