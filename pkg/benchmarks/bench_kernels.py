"""Timing comparison of the numba and numpy kernel paths.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 20000]

Both backends compute identical values; the table reports the best of
``--repeat`` wall-clock timings for each workload.
"""

import argparse
import time

import numpy as np

from nevlab import _kernels
from nevlab._backend import HAVE_NUMBA


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(size, rng):
    rcut = 1.0 - 1e-12

    # batched counting rows: degree-4 slice polynomials
    nums = 0.3 * (rng.normal(size=(size, 5)) + 1j * rng.normal(size=(size, 5)))
    dens = np.zeros_like(nums)
    dens[:, 0] = 1.0
    ws = 0.7 * np.exp(2j * np.pi * rng.random(size))

    # one rational map swept over many arguments
    num1 = np.array([0.06, -0.55, 1.0], dtype=np.complex128)
    den1 = np.array([1.0, -0.3, 0.02], dtype=np.complex128)
    ws1 = 0.9 * np.exp(2j * np.pi * rng.random(4 * size))

    # raster labeling
    mask = rng.random((1024, 1024)) < 0.55

    return [
        ("counting_batch deg4 x%d" % size,
         lambda: _kernels.counting_batch_np(nums, dens, ws, rcut),
         lambda: _kernels.counting_batch_nb(nums, dens, ws, rcut)),
        ("counting_single deg2 x%d" % (4 * size),
         lambda: _kernels.counting_single_np(num1, den1, ws1, rcut),
         lambda: _kernels.counting_single_nb(num1, den1, ws1, rcut)),
        ("label_count 1024^2",
         lambda: _kernels.label_count_np(mask),
         lambda: _kernels.label_count_nb(mask)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=20_000)
    args = parser.parse_args()

    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy path can run")
        return

    _kernels.warmup()
    rng = np.random.default_rng(0)

    print("%-28s %12s %12s %8s" % ("workload", "numpy", "numba", "speedup"))
    for name, np_fn, nb_fn in _workloads(args.size, rng):
        a = np_fn()
        b = nb_fn()
        a = np.atleast_1d(np.asarray(a, dtype=np.float64))
        b = np.atleast_1d(np.asarray(b, dtype=np.float64))
        if not np.allclose(a, b, rtol=1e-9, atol=1e-12, equal_nan=True):
            raise SystemExit("backend mismatch in %s" % name)
        t_np = _best_of(np_fn, args.repeat)
        t_nb = _best_of(nb_fn, args.repeat)
        print("%-28s %10.2f ms %10.2f ms %7.2fx"
              % (name, 1e3 * t_np, 1e3 * t_nb, t_np / t_nb))


if __name__ == "__main__":
    main()
