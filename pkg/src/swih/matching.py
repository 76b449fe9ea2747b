"""Sliding-window histogram matching and likelihood maps."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .baselines import (WeddingCakeConfig, brute_force_histogram, brute_force_sweep,
                        wedding_cake_histogram, wedding_cake_sweep)
from .engine import WindowQuery, map_shape, swih_query, swih_sweep
from .errors import ModelError, SizeError, SwihError
from .image import GrayImage, Quantizer, WeightedHistogram, normalize, quantize_image
from .kernels import KernelKind, KernelSpec
from .tables import build_tables


class Method(str, Enum):
    SWIH = "swih"
    BRUTE = "brute"
    CAKE = "cake"
    PLAIN = "plain"


class Similarity(str, Enum):
    BHATTACHARYYA = "bhattacharyya"
    INTERSECTION = "intersection"


def similarity(p, q, kind=Similarity.BHATTACHARYYA, axis=0):
    """Similarity of L1-normalized histograms along ``axis``; broadcasts."""
    kind = Similarity(kind)
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if kind is Similarity.BHATTACHARYYA:
        s = np.sqrt(p * q).sum(axis=axis)
    else:
        s = np.minimum(p, q).sum(axis=axis)
    return np.clip(s, 0.0, 1.0)


@dataclass(frozen=True)
class LikelihoodMap:
    """Scores for strict window centers; cell (v, u) is center (u + hx, v + hy)."""

    scores: np.ndarray
    hx: int
    hy: int

    @property
    def width(self) -> int:
        return self.scores.shape[1]

    @property
    def height(self) -> int:
        return self.scores.shape[0]

    def center_of(self, u: int, v: int):
        return u + self.hx, v + self.hy


def effective_kernel(kernel: KernelSpec, method) -> KernelSpec:
    if Method(method) is Method.PLAIN:
        return KernelSpec(KernelKind.UNIFORM, kernel.kw, kernel.kh)
    return kernel


def target_model(template: GrayImage, q: Quantizer, kernel: KernelSpec, method=Method.SWIH,
                 cake: WeddingCakeConfig | None = None) -> WeightedHistogram:
    """Normalized weighted histogram of the whole template, kernel centered on it.

    Non-affine kernels fall back to brute force under ``method=swih``.
    """
    method = Method(method)
    if (template.width, template.height) != (kernel.kw, kernel.kh):
        raise ModelError(
            f"template is {template.width}x{template.height} but kernel is {kernel.kw}x{kernel.kh}")
    kernel = effective_kernel(kernel, method)
    fi = quantize_image(template, q)
    query = WindowQuery((kernel.hx, kernel.hy), kernel)
    if method is Method.CAKE:
        raw = wedding_cake_histogram(build_tables(fi), query, cake or WeddingCakeConfig())
    elif method is Method.BRUTE or not kernel.quadrant_affine:
        raw = brute_force_histogram(fi, query)
    else:
        raw = swih_query(build_tables(fi), query)
    return normalize(raw)


def candidate_histograms(search: GrayImage, q: Quantizer, kernel: KernelSpec, method,
                         cake: WeddingCakeConfig | None = None, threads: int = 1) -> np.ndarray:
    """Raw candidate histograms for every strict center, shape (bins, rows, cols)."""
    method = Method(method)
    kernel = effective_kernel(kernel, method)
    n_rows, _ = map_shape(search.width, search.height, kernel)
    fi = quantize_image(search, q)
    if method is Method.BRUTE:
        sweep = lambda rows: brute_force_sweep(fi, kernel, rows)
    else:
        tables = build_tables(fi)
        if method is Method.CAKE:
            cfg = cake or WeddingCakeConfig()
            sweep = lambda rows: wedding_cake_sweep(tables, kernel, cfg, rows)
        else:
            sweep = lambda rows: swih_sweep(tables, kernel, rows)
    threads = max(1, int(threads))
    if threads == 1 or n_rows < 2:
        return sweep(None)
    edges = np.linspace(0, n_rows, min(threads, n_rows) + 1).astype(int)
    chunks = list(zip(edges[:-1], edges[1:]))
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(sweep, chunks))
    return np.concatenate(parts, axis=1)


def likelihood_map(search: GrayImage, model: WeightedHistogram, q: Quantizer, kernel: KernelSpec,
                   method=Method.SWIH, sim=Similarity.BHATTACHARYYA,
                   cake: WeddingCakeConfig | None = None, threads: int = 1) -> LikelihoodMap:
    if kernel.kw > search.width or kernel.kh > search.height:
        raise SizeError(
            f"{kernel.kw}x{kernel.kh} kernel larger than {search.width}x{search.height} search image")
    if model.bins != q.bins:
        raise ModelError(f"model has {model.bins} bins, quantizer has {q.bins}")
    if not model.normalized:
        model = normalize(model)
    raw = candidate_histograms(search, q, kernel, method, cake, threads)
    mass = raw.sum(axis=0, dtype=np.float64)
    cand = raw / mass
    scores = similarity(model.values[:, None, None], cand, sim, axis=0)
    return LikelihoodMap(scores, kernel.hx, kernel.hy)


def peak(lmap: LikelihoodMap):
    """Window center with the highest score; ties go to the first in row-major order."""
    if lmap.scores.size == 0:
        raise SwihError("empty likelihood map")
    flat = int(np.argmax(lmap.scores))
    v, u = divmod(flat, lmap.width)
    return lmap.center_of(u, v), float(lmap.scores[v, u])


def map_to_gray(lmap: LikelihoodMap) -> GrayImage:
    """Rescale scores linearly from [0, 1] to [0, 255]."""
    return GrayImage(np.rint(np.clip(lmap.scores, 0.0, 1.0) * 255.0).astype(np.uint8))


def write_map_csv(path, lmap: LikelihoodMap) -> None:
    lines = (",".join(f"{s:.9g}" for s in row) for row in lmap.scores)
    Path(path).write_text("\n".join(lines) + "\n")


def read_map_csv(path) -> np.ndarray:
    rows = [line.split(",") for line in Path(path).read_text().splitlines() if line]
    return np.array([[float(x) for x in row] for row in rows])
