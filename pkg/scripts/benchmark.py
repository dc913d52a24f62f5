#!/usr/bin/env python3
"""Time affinity-graph construction and optimization across image sizes.

Synthesizes square four-region scenes at each requested edge length, then
reports wall-clock seconds for the graph build and for the multislice
optimization separately, plus the structure each run found.  A small warmup
run executes first so compilation time does not pollute the first row.
"""

from __future__ import annotations

import argparse
import sys
import time

from slicemod import (AffinityConfig, OptimizerParams, QualityNorm,
                      build_affinity_graph, build_uniform_multislice,
                      compute_diagnostics, four_region_image,
                      linear_gamma_schedule, optimize)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[20, 40, 60, 80, 100],
                        help="square scene edge lengths to benchmark")
    parser.add_argument("--gamma-start", type=float, default=0.01)
    parser.add_argument("--gamma-step", type=float, default=0.04)
    parser.add_argument("--gamma-count", type=int, default=6)
    parser.add_argument("--omega", type=float, default=0.3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=1)
    parser.add_argument("--tau-rank", type=int, default=30)
    parser.add_argument("--knn", type=int, default=30)
    parser.add_argument("--window", default="10")
    parser.add_argument("--noise", type=float, default=0.02)
    return parser


def run_once(size: int, args) -> tuple:
    img = four_region_image(size, size, args.noise)
    cfg = AffinityConfig(tau_rank=args.tau_rank, knn=args.knn,
                         candidate_window=args.window)
    t0 = time.perf_counter()
    graph = build_affinity_graph(img, cfg)
    t1 = time.perf_counter()
    gammas = linear_gamma_schedule(args.gamma_start, args.gamma_step,
                                   args.gamma_count)
    ms = build_uniform_multislice(graph, gammas, args.omega)
    params = OptimizerParams(seed=args.seed, restarts=args.restarts)
    result = optimize(ms, params)
    t2 = time.perf_counter()
    diag = compute_diagnostics(result.partition, result.quality)
    return graph, result, diag, t1 - t0, t2 - t1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    # warm the compiled kernels on a tiny instance
    warm = argparse.Namespace(**vars(args))
    warm.tau_rank, warm.knn, warm.window = 4, 4, "3"
    run_once(8, warm)

    print("  size  pixels     edges  build_s  optim_s  passes"
          "  communities  quality")
    for size in args.sizes:
        graph, result, diag, t_build, t_opt = run_once(size, args)
        counts = "/".join(str(c) for c in diag.community_counts)
        print(f"{size:6d}  {graph.n:6d}  {graph.num_edges:8d}"
              f"  {t_build:7.2f}  {t_opt:7.2f}  {result.passes_used:6d}"
              f"  {counts:>11s}  {result.quality:.5f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
