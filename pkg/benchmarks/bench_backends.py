#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the three hot paths (bath integral, principal-value shift, adaptive
Bloch integration) on both backends and prints wall times and speedups.

    python benchmarks/bench_backends.py [--repeat N]
"""
import argparse
import math
import os
import time

import numpy as np

import anyondec as ad
from anyondec.backend import available_backends


def bench_integral(repeat):
    m = ad.ModelParams(splitting=1.0, temperature=0.02, cutoff=1.0,
                       coupling=1.0, shorttime_amplitude=1.0)
    us = np.logspace(-3, 6, 30)
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        for u in us:
            ad.decoherence_integral(float(u), m)
        best = min(best, time.perf_counter() - start)
    return best


def bench_shift(repeat):
    grid = [(om, temp) for om in (0.5, 1.0, 2.0) for temp in (0.0, 0.1, 1.0)]
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        for om, temp in grid:
            m = ad.ModelParams(splitting=om, temperature=temp, cutoff=1.0,
                               coupling=1.0, shorttime_amplitude=1.0)
            ad.frequency_shift(m)
        best = min(best, time.perf_counter() - start)
    return best


def bench_evolve(repeat):
    m = ad.ModelParams(splitting=1.0, temperature=1.0, cutoff=5.0,
                       coupling=0.0, shorttime_amplitude=0.0)
    gamma = 1e-2
    rates = ad.RateSet(relaxation=gamma, pump=gamma * math.tanh(0.5),
                       shift=0.02)
    s0 = ad.BlochState(0.0, 0.0, 1.0)
    grid = np.linspace(0.0, 20.0 / gamma, 41)
    cfg = ad.IntegratorSettings(rel_tol=1e-12, abs_tol=1e-14)
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        ad.evolve(s0, rates, m, grid, cfg)
        best = min(best, time.perf_counter() - start)
    return best


TASKS = {
    "bath integral (30 pts, 9 decades)": bench_integral,
    "principal-value shift (3x3 grid)": bench_shift,
    "adaptive Bloch integration (2000 cycles)": bench_evolve,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per task, best-of is reported")
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}\n")
    results = {}
    for backend in backends:
        os.environ["ANYONDEC_BACKEND"] = backend
        # warm pass compiles the numba kernels outside the timed region
        for task in TASKS.values():
            task(1)
        results[backend] = {name: task(args.repeat)
                            for name, task in TASKS.items()}
    os.environ.pop("ANYONDEC_BACKEND", None)

    width = max(len(name) for name in TASKS)
    header = f"{'task':<{width}}"
    for backend in backends:
        header += f"  {backend + ' [ms]':>12}"
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name in TASKS:
        line = f"{name:<{width}}"
        for backend in backends:
            line += f"  {results[backend][name] * 1e3:>12.2f}"
        if len(backends) == 2:
            ratio = results["numpy"][name] / results["numba"][name]
            line += f"  {ratio:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
