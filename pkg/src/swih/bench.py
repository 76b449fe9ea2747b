"""Timing harness: table build once per method, full sweep per kernel size."""
from __future__ import annotations

import csv
import statistics
import time
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from .baselines import WeddingCakeConfig, brute_force_sweep, wedding_cake_sweep
from .engine import map_shape, swih_sweep
from .errors import SizeError
from .image import FeatureImage, GrayImage, Quantizer, quantize_image
from .kernels import KernelKind, KernelSpec
from .tables import build_tables

METHODS = ("swih", "brute", "cake", "plain")
DEFAULT_RINGS = 4


@dataclass(frozen=True)
class BenchRecord:
    method: str
    width: int
    height: int
    kw: int
    kh: int
    bins: int
    build_ms: float
    query_total_ms: float
    query_mean_us: float


CSV_HEADER = [f.name for f in fields(BenchRecord)]


def random_image(width: int, height: int, seed: int) -> GrayImage:
    rng = np.random.default_rng(seed)
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


def _median_ms(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(times)


def sweep_fn(method: str, fi: FeatureImage, tables, kernel: KernelSpec, rings: int = DEFAULT_RINGS):
    """Zero-argument callable running one full sliding-window sweep."""
    if method == "brute":
        return lambda: brute_force_sweep(fi, kernel)
    if method == "plain":
        uniform = KernelSpec(KernelKind.UNIFORM, kernel.kw, kernel.kh)
        return lambda: swih_sweep(tables, uniform)
    if method == "cake":
        # ring count is capped by the smaller half-extent
        cfg = WeddingCakeConfig(min(rings, min(kernel.hx, kernel.hy) + 1))
        return lambda: wedding_cake_sweep(tables, kernel, cfg)
    if method == "swih":
        return lambda: swih_sweep(tables, kernel)
    raise ValueError(f"unknown method {method!r}")


def run_bench(width: int, height: int, bins: int, kernels, methods, seed: int = 0,
              reps: int = 3, kind: KernelKind = KernelKind.MANHATTAN, rings: int = DEFAULT_RINGS):
    """Benchmark each method over square kernels of the given odd sizes.

    ``kernels`` entries are ints (square) or ``(kw, kh)`` pairs.
    """
    if width < 1 or height < 1:
        raise SizeError(f"invalid image size {width}x{height}")
    specs = [KernelSpec(kind, *(k if isinstance(k, tuple) else (k, k))) for k in kernels]
    for k in specs:
        map_shape(width, height, k)
    fi = quantize_image(random_image(width, height, seed), Quantizer(bins))

    records = []
    for method in methods:
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        tables = None
        build_ms = 0.0
        if method != "brute":
            build_ms = _median_ms(lambda: build_tables(fi), reps)
            tables = build_tables(fi)
        for k in specs:
            fn = sweep_fn(method, fi, tables, k, rings)
            fn()  # warm-up, not measured
            total = _median_ms(fn, reps)
            rows, cols = map_shape(width, height, k)
            records.append(BenchRecord(method, width, height, k.kw, k.kh, bins,
                                       build_ms, total, total * 1e3 / (rows * cols)))
    return records


def write_csv(path, records, append: bool = True) -> None:
    path = Path(path)
    fresh = not append or not path.exists() or path.stat().st_size == 0
    with open(path, "a" if append else "w", newline="") as fh:
        writer = csv.writer(fh)
        if fresh:
            writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(astuple(r))


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for row in reader:
            out.append(BenchRecord(
                row["method"], int(row["width"]), int(row["height"]), int(row["kw"]),
                int(row["kh"]), int(row["bins"]), float(row["build_ms"]),
                float(row["query_total_ms"]), float(row["query_mean_us"])))
        return out
