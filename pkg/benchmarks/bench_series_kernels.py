#!/usr/bin/env python3
"""Compare the two series multiplication kernels.

``series_mul`` dispatches on the ``SDW_SERIES_KERNEL`` environment variable:
``naive`` is a direct double loop over term pairs, ``kronecker`` packs each
series into a single big integer so Python's multiplication does the
convolution.  This script times both on representative workloads (theta-series
products at increasing truncation depth, plus a full orbit sum) and checks
that the results agree exactly.

Usage: python benchmarks/bench_series_kernels.py [--trunc N] [--repeat R]
"""

from __future__ import annotations

import argparse
import os
import time
from fractions import Fraction

from bianchi9 import modular
from bianchi9.seeley import CoeffIndex, orbit_sum
from bianchi9.series import series_mul
from bianchi9.theta import Characteristics, ThetaSpec, theta_series

F = Fraction

KERNELS = ("naive", "kronecker")


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_theta_products(trunc: int, repeat: int) -> None:
    chars = [
        Characteristics(F(1, 6), F(5, 6)),
        Characteristics(F(2, 3), F(1, 6)),
        Characteristics(F(1, 3), F(1, 5)),
    ]
    series = [theta_series(ThetaSpec(c), trunc) for c in chars]
    print(f"theta-series products (trunc={trunc}, best of {repeat}):")
    results = {}
    for kernel in KERNELS:
        os.environ["SDW_SERIES_KERNEL"] = kernel

        def work():
            acc = series[0]
            for s in series[1:] + series[:-1]:
                acc = series_mul(acc, s)
            return acc

        results[kernel] = work()
        dt = _time(work, repeat)
        print(f"  {kernel:10s} {dt * 1e3:9.2f} ms")
    assert results["naive"] == results["kronecker"], "kernels disagree"


def bench_orbit_sum(trunc: int, repeat: int) -> None:
    orb = modular.orbit(F(1, 6), F(5, 6))
    print(f"8-point orbit sum, order 0 (trunc={trunc}, best of {repeat}):")
    results = {}
    for kernel in KERNELS:
        os.environ["SDW_SERIES_KERNEL"] = kernel
        results[kernel] = orbit_sum(orb, CoeffIndex(0), trunc=trunc)
        dt = _time(lambda: orbit_sum(orb, CoeffIndex(0), trunc=trunc), repeat)
        print(f"  {kernel:10s} {dt:9.3f} s")
    same = results["naive"].representation == results["kronecker"].representation
    assert same, "kernels disagree"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trunc", type=int, default=8, help="truncation depth")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    args = parser.parse_args()

    saved = os.environ.get("SDW_SERIES_KERNEL")
    try:
        bench_theta_products(args.trunc, args.repeat)
        bench_orbit_sum(min(args.trunc, 5), max(1, args.repeat - 1))
    finally:
        if saved is None:
            os.environ.pop("SDW_SERIES_KERNEL", None)
        else:
            os.environ["SDW_SERIES_KERNEL"] = saved
    print("kernels agree on all benchmarked products")


if __name__ == "__main__":
    main()
