"""Spatial distance kernels over pixel offsets from a window center."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import InvalidKernelError, OutOfRangeError


class KernelKind(str, Enum):
    UNIFORM = "uniform"
    MANHATTAN = "manhattan"
    CHEBYSHEV = "chebyshev"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class KernelSpec:
    """A ``kw`` x ``kh`` weighting kernel centered on a pixel.

    ``sigma`` only matters for the Gaussian-Chebyshev kind and is measured
    in units of the half-extents.
    """

    kind: KernelKind
    kw: int
    kh: int
    sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        for name in ("kw", "kh"):
            v = getattr(self, name)
            if int(v) != v or v < 1 or v % 2 == 0:
                raise InvalidKernelError(f"kernel {name} must be a positive odd integer, got {v}")
            object.__setattr__(self, name, int(v))
        if self.kind is KernelKind.GAUSSIAN and not self.sigma > 0:
            raise InvalidKernelError(f"gaussian sigma must be positive, got {self.sigma}")

    @property
    def hx(self) -> int:
        return (self.kw - 1) // 2

    @property
    def hy(self) -> int:
        return (self.kh - 1) // 2

    @property
    def quadrant_affine(self) -> bool:
        return self.kind in (KernelKind.UNIFORM, KernelKind.MANHATTAN)

    @property
    def integral(self) -> bool:
        return self.kind is not KernelKind.GAUSSIAN

    def label(self) -> str:
        if self.kind is KernelKind.GAUSSIAN:
            return f"gaussian:{self.sigma:g}"
        return self.kind.value


def parse_kernel(text: str, kw: int, kh: int) -> KernelSpec:
    """Parse ``uniform|manhattan|chebyshev|gaussian:<sigma>``."""
    name, _, arg = text.strip().lower().partition(":")
    try:
        kind = KernelKind(name)
    except ValueError:
        raise InvalidKernelError(f"unknown kernel {text!r}") from None
    if kind is KernelKind.GAUSSIAN:
        try:
            sigma = float(arg) if arg else 1.0
        except ValueError:
            raise InvalidKernelError(f"bad gaussian sigma {arg!r}") from None
        return KernelSpec(kind, kw, kh, sigma)
    if arg:
        raise InvalidKernelError(f"kernel {name} takes no parameter")
    return KernelSpec(kind, kw, kh)


def manhattan_distance(p, c) -> int:
    return abs(p[0] - c[0]) + abs(p[1] - c[1])


def weight_at(k: KernelSpec, dx: int, dy: int):
    hx, hy = k.hx, k.hy
    if abs(dx) > hx or abs(dy) > hy:
        raise OutOfRangeError(f"offset ({dx}, {dy}) outside {k.kw}x{k.kh} kernel")
    adx, ady = abs(dx), abs(dy)
    if k.kind is KernelKind.UNIFORM:
        return 1
    if k.kind is KernelKind.MANHATTAN:
        return (hx + hy + 1) - (adx + ady)
    if k.kind is KernelKind.CHEBYSHEV:
        h = max(hx, hy)
        if hx == hy:
            return (h + 1) - max(adx, ady)
        r = max(adx * h / max(hx, 1), ady * h / max(hy, 1))
        return (h + 1) - math.floor(r + 0.5)
    r = max(adx / max(hx, 1), ady / max(hy, 1))
    return math.exp(-(r * r) / (2.0 * k.sigma * k.sigma))


@lru_cache(maxsize=64)
def _weight_grid(k: KernelSpec) -> np.ndarray:
    dtype = np.int64 if k.integral else np.float64
    grid = np.empty((k.kh, k.kw), dtype=dtype)
    for j in range(k.kh):
        for i in range(k.kw):
            grid[j, i] = weight_at(k, i - k.hx, j - k.hy)
    grid.setflags(write=False)
    return grid


def weight_grid(k: KernelSpec) -> np.ndarray:
    """Weights as a read-only (kh, kw) array indexed [dy + hy, dx + hx]."""
    return _weight_grid(k)


def kernel_weight_sum(k: KernelSpec):
    total = weight_grid(k).sum()
    return int(total) if k.integral else float(total)
