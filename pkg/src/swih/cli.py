"""Command-line entry point: ``swih {likelihood,bench,scene,query}``."""
from __future__ import annotations

import argparse
import sys

from . import bench
from .baselines import WeddingCakeConfig, brute_force_histogram, wedding_cake_histogram
from .engine import WindowQuery, swih_query
from .errors import SwihError
from .image import Quantizer, normalize, quantize_image, read_pgm, write_pgm
from .kernels import parse_kernel
from .matching import (Method, Similarity, likelihood_map, map_to_gray, peak, target_model,
                       write_map_csv)
from .scene import SceneSpec, generate_scene
from .tables import build_tables


def _kernel_args(p):
    p.add_argument("--kernel", default="manhattan",
                   help="uniform | manhattan | chebyshev | gaussian:<sigma>")
    p.add_argument("--kw", type=int, required=True)
    p.add_argument("--kh", type=int, required=True)
    p.add_argument("--bins", type=int, default=16)


def _cake_args(p):
    p.add_argument("--rings", type=int, default=bench.DEFAULT_RINGS)
    p.add_argument("--ring-rule", choices=["mean", "level"], default="mean")


def _int_list(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _str_list(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swih", description="Spatially weighted integral histograms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("likelihood", help="sliding-window likelihood map")
    p.add_argument("--search", required=True)
    p.add_argument("--template", required=True)
    _kernel_args(p)
    p.add_argument("--method", choices=[m.value for m in Method], default="swih")
    p.add_argument("--sim", choices=[s.value for s in Similarity], default="bhattacharyya")
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.add_argument("--threads", type=int, default=1)
    _cake_args(p)
    p.set_defaults(func=cmd_likelihood)

    p = sub.add_parser("bench", help="timing sweep over kernel sizes")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--bins", type=int, default=16)
    p.add_argument("--kernels", type=_int_list, default=[3, 7, 15, 31, 61])
    p.add_argument("--methods", type=_str_list, default=list(bench.METHODS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--rings", type=int, default=bench.DEFAULT_RINGS)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("scene", help="generate a seeded synthetic scene")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=160)
    p.add_argument("--height", type=int, default=160)
    p.add_argument("--kw", type=int, default=31)
    p.add_argument("--kh", type=int, default=31)
    p.add_argument("--clutter", type=float, default=0.6)
    p.add_argument("--corruption", type=float, default=0.5)
    p.add_argument("--decoys", type=int, default=3)
    p.add_argument("--plant", type=_int_list, help="plant center as x,y")
    p.add_argument("--out-search", required=True)
    p.add_argument("--out-template", required=True)
    p.set_defaults(func=cmd_scene)

    p = sub.add_parser("query", help="weighted histogram of one window as bin,value CSV")
    p.add_argument("--image", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    _kernel_args(p)
    p.add_argument("--method", choices=["swih", "brute", "cake"], default="swih")
    p.add_argument("--border", choices=["strict", "clipped"], default="strict")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out", help="CSV path (default: stdout)")
    _cake_args(p)
    p.set_defaults(func=cmd_query)
    return parser


def cmd_likelihood(args) -> int:
    kernel = parse_kernel(args.kernel, args.kw, args.kh)
    q = Quantizer(args.bins)
    cake = WeddingCakeConfig(args.rings, args.ring_rule)
    search = read_pgm(args.search)
    template = read_pgm(args.template)
    model = target_model(template, q, kernel, args.method, cake)
    lmap = likelihood_map(search, model, q, kernel, args.method, args.sim, cake, args.threads)
    write_pgm(args.out, map_to_gray(lmap))
    if args.csv:
        write_map_csv(args.csv, lmap)
    (x, y), score = peak(lmap)
    print(f"peak x={x} y={y} score={score:.9f}")
    return 0


def cmd_bench(args) -> int:
    records = bench.run_bench(args.width, args.height, args.bins, args.kernels, args.methods,
                              seed=args.seed, reps=args.reps, rings=args.rings)
    bench.write_csv(args.csv, records)
    for r in records:
        print(f"{r.method:>6} {r.kw}x{r.kh}: build {r.build_ms:.2f} ms, "
              f"sweep {r.query_total_ms:.2f} ms, {r.query_mean_us:.4f} us/query")
    return 0


def cmd_scene(args) -> int:
    plant = tuple(args.plant) if args.plant else None
    if plant is not None and len(plant) != 2:
        raise SwihError("--plant takes x,y")
    spec = SceneSpec(args.seed, args.width, args.height, args.kw, args.kh, plant,
                     args.clutter, args.corruption, args.decoys)
    search, template, (x, y) = generate_scene(spec)
    write_pgm(args.out_search, search)
    write_pgm(args.out_template, template)
    print(f"truth x={x} y={y}")
    return 0


def cmd_query(args) -> int:
    kernel = parse_kernel(args.kernel, args.kw, args.kh)
    fi = quantize_image(read_pgm(args.image), Quantizer(args.bins))
    query = WindowQuery((args.x, args.y), kernel, args.border)
    if args.method == "brute":
        hist = brute_force_histogram(fi, query)
    elif args.method == "cake":
        hist = wedding_cake_histogram(build_tables(fi), query, WeddingCakeConfig(args.rings, args.ring_rule))
    else:
        hist = swih_query(build_tables(fi), query)
    if args.normalize:
        hist = normalize(hist)
    lines = ["bin,value"]
    for i, v in enumerate(hist.values):
        lines.append(f"{i},{v:.17g}" if hist.values.dtype.kind == "f" else f"{i},{v}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SwihError, ValueError, OSError) as exc:
        print(f"swih {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
