"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--images C8 Z I3 robot_cycle]

Each row times one kernel on one image for both backends and reports the
speedup.  Results from both backends are compared for equality first.
"""
import argparse
import time

import numpy as np

from lefdt import _kernels
from lefdt import fixtures as F
from lefdt.enumeration import lefschetz_values, map_array, scan
from lefdt.lefschetz import complex_for


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def tasks(img):
    cx = complex_for(img, "simplicial")
    maps = map_array(img, img)
    yield "enumerate", lambda k: map_array(img, img, kernels=k)
    yield "scan-fixed", lambda k: scan(img, _kernels.STAT_FIXED, kernels=k)[1]
    yield "scan-lefschetz", lambda k: scan(img, _kernels.STAT_LEFSCHETZ, cx, kernels=k)[1]
    yield "batch-lefschetz", lambda k: lefschetz_values(maps, cx, kernels=k)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--images", nargs="+", default=["C6", "C8", "Y", "I3", "Z"])
    args = p.parse_args(argv)
    py, cy = _kernels.python_backend, _kernels.compiled_backend
    if cy is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e .` first")
    print(f"{'image':<12} {'maps':>7} {'kernel':<16} {'python s':>9} {'cython s':>9} "
          f"{'speedup':>8}", flush=True)
    for name in args.images:
        img = F.get(name)
        count = len(map_array(img, img))
        for label, fn in tasks(img):
            tp, rp = best_of(lambda: fn(py), args.repeat)
            tc, rc = best_of(lambda: fn(cy), args.repeat)
            if not np.array_equal(np.asarray(rp), np.asarray(rc)):
                raise SystemExit(f"{name}/{label}: backends disagree")
            print(f"{name:<12} {count:>7} {label:<16} {tp:>9.4f} {tc:>9.4f} "
                  f"{tp / tc:>7.1f}x", flush=True)


if __name__ == "__main__":
    main()
