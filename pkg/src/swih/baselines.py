"""Reference methods: brute-force weighted histograms and the wedding-cake
(nested-ring) approximation built from plain integral-histogram queries."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .engine import BorderPolicy, WindowQuery, _clip, _row_range, map_shape, rect_sweep
from .errors import ConfigError
from .image import FeatureImage, WeightedHistogram
from .kernels import KernelSpec, weight_at, weight_grid
from .tables import IntegralTableSet, RectRegion, rect_sums


def brute_force_histogram(fi: FeatureImage, q: WindowQuery) -> WeightedHistogram:
    """Accumulate every window pixel's kernel weight into its bin."""
    q.check(fi.width, fi.height)
    k = q.kernel
    grid = weight_grid(k)
    xc, yc = q.center
    hist = np.zeros(fi.bins, dtype=grid.dtype)
    for dy in range(-k.hy, k.hy + 1):
        y = yc + dy
        if not 0 <= y < fi.height:
            continue
        for dx in range(-k.hx, k.hx + 1):
            x = xc + dx
            if 0 <= x < fi.width:
                hist[fi.data[y, x]] += grid[dy + k.hy, dx + k.hx]
    return WeightedHistogram(hist)


def brute_force_sweep(fi: FeatureImage, k: KernelSpec, rows=None) -> np.ndarray:
    """Brute-force histograms of all strict windows, shape (bins, rows, cols).

    Loops over the kw*kh kernel offsets; each offset scatters its weight into
    the bin of the shifted pixel for every center at once.
    """
    n_rows, cols = map_shape(fi.width, fi.height, k)
    r0, r1 = _row_range(rows, n_rows)
    n = r1 - r0
    grid = weight_grid(k)
    ncells = n * cols
    out = np.zeros(fi.bins * ncells, dtype=grid.dtype)
    base = np.arange(ncells, dtype=np.intp).reshape(n, cols)
    idx = np.empty((n, cols), dtype=np.intp)
    for j in range(k.kh):
        for i in range(k.kw):
            np.multiply(fi.data[r0 + j:r1 + j, i:i + cols], ncells, out=idx)
            idx += base
            out[idx.ravel()] += grid[j, i]
    return out.reshape(fi.bins, n, cols)


class RingRule(str, Enum):
    MEAN = "mean"
    LEVEL = "level"


@dataclass(frozen=True)
class WeddingCakeConfig:
    rings: int = 4
    rule: RingRule = RingRule.MEAN

    def __post_init__(self):
        object.__setattr__(self, "rule", RingRule(self.rule))
        if int(self.rings) != self.rings or self.rings < 1:
            raise ConfigError(f"ring count must be a positive integer, got {self.rings}")

    def validate(self, k: KernelSpec) -> None:
        limit = min(k.hx, k.hy) + 1
        if self.rings > limit:
            raise ConfigError(f"{self.rings} rings exceed the limit of {limit} for a {k.kw}x{k.kh} kernel")


def ring_shrinks(k: KernelSpec, cfg: WeddingCakeConfig):
    """Per-side inset (sx_i, sy_i) of nested rectangle R_i, outermost first."""
    cfg.validate(k)
    m = cfg.rings
    return [((i * (k.hx + 1)) // m, (i * (k.hy + 1)) // m) for i in range(m)]


@lru_cache(maxsize=64)
def ring_weights(k: KernelSpec, cfg: WeddingCakeConfig) -> tuple:
    shrinks = ring_shrinks(k, cfg)
    grid = weight_grid(k).astype(np.float64)
    weights = []
    for i, (sx, sy) in enumerate(shrinks):
        if cfg.rule is RingRule.LEVEL:
            weights.append(float(weight_at(k, k.hx - sx, 0)))
            continue
        mask = np.zeros(grid.shape, dtype=bool)
        mask[sy:k.kh - sy, sx:k.kw - sx] = True
        if i + 1 < len(shrinks):
            ix, iy = shrinks[i + 1]
            mask[iy:k.kh - iy, ix:k.kw - ix] = False
        weights.append(float(grid[mask].mean()))
    return tuple(weights)


def wedding_cake_histogram(t: IntegralTableSet, q: WindowQuery, cfg: WeddingCakeConfig) -> WeightedHistogram:
    k = q.kernel
    q.check(t.width, t.height)
    weights = ring_weights(k, cfg)
    xc, yc = q.center
    rects = []
    for sx, sy in ring_shrinks(k, cfg):
        rect = RectRegion(xc - k.hx + sx, yc - k.hy + sy, xc + k.hx - sx, yc + k.hy - sy)
        if q.border is BorderPolicy.CLIPPED:
            rect = _clip(rect, t.width, t.height)
        rects.append(rect_sums(t, "plain", rect))
    rects.append(0)
    hist = np.zeros(t.bins, dtype=np.float64)
    for i, w in enumerate(weights):
        hist += w * (rects[i] - rects[i + 1])
    return WeightedHistogram(hist)


def wedding_cake_sweep(t: IntegralTableSet, k: KernelSpec, cfg: WeddingCakeConfig, rows=None) -> np.ndarray:
    n_rows, cols = map_shape(t.width, t.height, k)
    r0, r1 = _row_range(rows, n_rows)
    weights = ring_weights(k, cfg)
    rects = [rect_sweep(t.plain, (-k.hx + sx, k.hx - sx), (-k.hy + sy, k.hy - sy), k.hx, k.hy, r0, r1, cols)
             for sx, sy in ring_shrinks(k, cfg)]
    rects.append(0)
    out = np.zeros((t.bins, r1 - r0, cols), dtype=np.float64)
    for i, w in enumerate(weights):
        out += w * (rects[i] - rects[i + 1])
    return out
