"""Seeded synthetic search scenes with a planted template and decoys.

The template has radial bands of Manhattan distance from its center, with a
different intensity level per band and quadrant. Decoys reuse the template's pixels in a shuffled
layout, so their plain histograms equal the template's exactly while their
spatially weighted histograms do not. After planting, part of the plant's
outermost ring is overwritten with clutter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpecError
from .image import GrayImage

# radial bands per quadrant; 3 bands x 4 quadrants + background fit the 16 levels
BANDS = 3


@dataclass(frozen=True)
class SceneSpec:
    seed: int
    width: int = 160
    height: int = 160
    kw: int = 31
    kh: int = 31
    plant_center: tuple | None = None
    clutter: float = 0.6
    corruption: float = 0.5
    decoys: int = 3

    def __post_init__(self):
        if self.kw < 1 or self.kh < 1 or self.kw % 2 == 0 or self.kh % 2 == 0:
            raise SpecError(f"template size must be odd, got {self.kw}x{self.kh}")
        if self.kw > self.width or self.kh > self.height:
            raise SpecError("template larger than scene")
        for name in ("clutter", "corruption"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise SpecError(f"{name} must lie in [0, 1], got {v}")
        if self.decoys < 0:
            raise SpecError("decoy count must be nonnegative")
        if self.plant_center is not None:
            x, y = self.plant_center
            hx, hy = (self.kw - 1) // 2, (self.kh - 1) // 2
            if x - hx < 0 or x + hx >= self.width or y - hy < 0 or y + hy >= self.height:
                raise SpecError(f"plant at ({x}, {y}) does not fit the {self.width}x{self.height} scene")


def make_template(rng: np.random.Generator, kw: int, kh: int, levels: np.ndarray) -> np.ndarray:
    """Radial bands of Manhattan distance, split into quadrants with their own levels."""
    hx, hy = (kw - 1) // 2, (kh - 1) // 2
    dy, dx = np.mgrid[-hy:hy + 1, -hx:hx + 1]
    radius = (np.abs(dx) + np.abs(dy)) / max(hx + hy, 1)
    band = np.minimum((radius * BANDS).astype(int), BANDS - 1)
    quadrant = (dx > 0).astype(int) + 2 * (dy > 0)
    noise = rng.integers(-4, 5, size=band.shape)
    return np.clip(levels[quadrant * BANDS + band] + noise, 0, 255).astype(np.uint8)


def _outer_ring(kw: int, kh: int):
    ys, xs = np.mgrid[0:kh, 0:kw]
    ring = (xs == 0) | (ys == 0) | (xs == kw - 1) | (ys == kh - 1)
    return np.flatnonzero(ring.ravel())


def _place(rng, spec, taken, attempts=200):
    hx, hy = (spec.kw - 1) // 2, (spec.kh - 1) // 2
    for _ in range(attempts):
        x = int(rng.integers(hx, spec.width - hx))
        y = int(rng.integers(hy, spec.height - hy))
        if all(abs(x - ox) >= spec.kw or abs(y - oy) >= spec.kh for ox, oy in taken):
            return x, y
    return None


def generate_scene(spec: SceneSpec):
    """Return ``(search, template, truth_center)``; a pure function of ``spec``."""
    rng = np.random.default_rng(spec.seed)
    hx, hy = (spec.kw - 1) // 2, (spec.kh - 1) // 2
    palette = rng.permutation(np.arange(8, 256, 16))
    n_levels = 4 * BANDS
    template = make_template(rng, spec.kw, spec.kh, palette[:n_levels])

    # the constant background never shares a level with the template
    background = int(palette[n_levels])
    scene = np.full((spec.height, spec.width), background, dtype=np.uint8)
    noisy = rng.random(scene.shape) < spec.clutter
    scene[noisy] = rng.integers(0, 256, size=int(noisy.sum()), dtype=np.uint8)

    if spec.plant_center is None:
        truth = _place(rng, spec, [])
    else:
        truth = tuple(int(v) for v in spec.plant_center)
    taken = [truth]
    for _ in range(spec.decoys):
        where = _place(rng, spec, taken)
        if where is None:
            break
        taken.append(where)
        patch = rng.permutation(template.ravel()).reshape(template.shape)
        x, y = where
        scene[y - hy:y + hy + 1, x - hx:x + hx + 1] = patch

    x, y = truth
    planted = template.copy().ravel()
    ring = _outer_ring(spec.kw, spec.kh)
    n_bad = int(round(spec.corruption * ring.size))
    bad = rng.choice(ring, size=n_bad, replace=False)
    planted[bad] = rng.integers(0, 256, size=n_bad, dtype=np.uint8)
    scene[y - hy:y + hy + 1, x - hx:x + hx + 1] = planted.reshape(template.shape)
    return GrayImage(scene), GrayImage(template), truth
