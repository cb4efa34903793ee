"""Compiled vs numpy kernels: per-node cost and a full ensemble sweep.

    python benchmarks/bench_kernels.py [--nodes 100000] [--repeat 5]
"""
from __future__ import annotations

import argparse
import math
import time

import numpy as np

from swpclock import BarrierConfig, GaussianPacket, ScatteringContext, ensemble_averages, kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--widths", type=int, default=100, help="grid points in the ensemble sweep")
    args = parser.parse_args(argv)

    k = np.linspace(0.05, 1.5, args.nodes)
    k0 = math.sqrt(0.44)
    ctx = ScatteringContext()
    packet = GaussianPacket(k0, 10.0, -80.0)
    widths = np.linspace(0.5, 40.0, args.widths)

    cases = {
        "barrier_times": lambda: kernels.barrier_times(k, 0.30, 0.15, 7.0, 1.0, 1.0),
        "ensemble_integrand": lambda: kernels.ensemble_integrand(k, k0, 10.0, 0.30, 0.15, 7.0, 1.0, 1.0),
        "ensemble sweep": lambda: [ensemble_averages(packet, ctx, BarrierConfig(0.30, 0.15, a)) for a in widths],
    }
    timings = {}
    for name in kernels.available_backends():
        prev = kernels.use_backend(name)
        try:
            timings[name] = {case: best_of(fn, args.repeat) for case, fn in cases.items()}
        finally:
            kernels.use_backend(prev)

    names = list(timings)
    print(f"{'case':<22}" + "".join(f"{n:>14}" for n in names) + ("    speedup" if len(names) > 1 else ""))
    for case in cases:
        row = f"{case:<22}" + "".join(f"{timings[n][case] * 1e3:>12.2f}ms" for n in names)
        if len(names) > 1:
            row += f"  {timings['python'][case] / timings['compiled'][case]:>8.1f}x"
        print(row)
    print(f"({args.nodes} nodes; sweep of {args.widths} widths, sigma=10, E(k0)=0.22)")


if __name__ == "__main__":
    main()
