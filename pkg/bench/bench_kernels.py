#!/usr/bin/env python3
"""Benchmark the rigidity window kernel: numba JIT vs pure-numpy fallback.

Runs both implementations on the same synthetic unfolded spectrum, checks
they agree, and prints timings. The JIT path is what the package uses by
default; NETUNFOLD_NO_NUMBA=1 switches the whole package to the numpy path.

    python3 bench/bench_kernels.py [--levels 200000] [--windows 10000]
"""

import argparse
import time

import numpy as np

from netunfold._kernels import _delta3_windows_loop, _delta3_windows_numpy

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=200_000)
    parser.add_argument("--windows", type=int, default=10_000)
    parser.add_argument("--length", type=float, default=20.0)
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    levels = np.cumsum(rng.exponential(1.0, args.levels))
    starts = rng.uniform(levels[0], levels[-1] - args.length, args.windows)

    ref = _delta3_windows_numpy(levels, starts, args.length)
    t_numpy = time_call(_delta3_windows_numpy, levels, starts, args.length)
    print(f"numpy fallback : {t_numpy * 1e3:9.2f} ms")

    if HAVE_NUMBA:
        jit = njit(cache=True, nogil=True)(_delta3_windows_loop)
        jit(levels[:100], starts[:10], args.length)  # compile outside the timing
        out = jit(levels, starts, args.length)
        assert np.allclose(out, ref, rtol=1e-9, atol=1e-12), "backends disagree"
        t_jit = time_call(jit, levels, starts, args.length)
        print(f"numba @njit    : {t_jit * 1e3:9.2f} ms")
        print(f"speedup        : {t_numpy / t_jit:9.1f}x")
    else:
        print("numba not importable; only the fallback was timed")

    print(f"window mean    : {ref.mean():.6f} (Poisson spectrum, expect ~L/15 = "
          f"{args.length / 15:.4f})")


if __name__ == "__main__":
    main()
