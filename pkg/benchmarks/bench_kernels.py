"""Compiled versus pure-Python exact kernels on matrices the toolkit builds.

Run:  python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from recenters import _kernels
from recenters.birank import skew_ideal_generator
from recenters.nc import relation_coefficients
from recenters.symmetry import from_name
from recenters.tensor import embed_leg


def workloads():
    dj3 = from_name("dj:3:3/2")
    S = skew_ideal_generator(dj3)
    stacked = np.hstack([embed_leg(S, i, 4).mat for i in range(1, 4)])
    g = [dj3.R.shift(x) for x in ("1/3", "-2/5", "7/4", "5/9")]
    left, right = relation_coefficients(*g)
    return [
        ("rref exchange system 81x162", "rref", (np.hstack([right, left]),)),
        ("rank skew ideal, 4 legs 81x243", "rank_ff", (stacked,)),
        ("matmul 81x81 @ 81x81", "matmul", (left, right)),
    ]


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    compiled = _kernels.compiled_backend
    py = _kernels.python_backend
    print(f"{'workload':34s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, op, data in workloads():
        tp = best_of(getattr(py, op), data, args.repeat)
        if compiled is None:
            print(f"{label:34s} {tp:10.3f} {'n/a':>11s} {'n/a':>8s}")
            continue
        tc = best_of(getattr(compiled, op), data, args.repeat)
        if op == "rref":
            a, b = py.rref(*data), compiled.rref(*data)
            assert list(a[1]) == list(b[1]) and (a[0] == b[0]).all()
        print(f"{label:34s} {tp:10.3f} {tc:11.3f} {tp / tc:7.1f}x")
    if compiled is None:
        print("compiled kernels not built; run `pip install --no-build-isolation -e .`")


if __name__ == "__main__":
    main()
