"""Compiled vs numpy subset-eigenvalue sweeps.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-n 14]

For each (n, k) the Gram matrix of a random m x n Gaussian matrix is swept
over all k-subsets, once with the njit Jacobi loop and once with batched
``numpy.linalg.eigvalsh``; the best of ``--repeat`` runs is reported, along
with the largest disagreement between the two. The plain-Python Jacobi loop
is timed on the smallest case only, since it is orders of magnitude slower.
"""

import argparse
import math
import timeit

import numpy as np

from sparkkit import _kernels
from sparkkit.rip import _subsets


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--max-n", type=int, default=14)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _kernels.subset_extremes_numba is None:
        print("numba path unavailable (not installed or SPARKKIT_DISABLE_NUMBA set); nothing to compare")
        return

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'k':>3} {'subsets':>8} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8} {'max diff':>10}")
    cases = [(n, k) for n in range(6, args.max_n + 1, 4) for k in (2, 3, 5, 8) if k <= n]
    for n, k in cases:
        a = rng.standard_normal((max(2, n // 2), n))
        g = a.T @ a
        subsets = _subsets(n, k)
        _kernels.subset_extremes_numba(g, subsets[:1])
        t_jit = best(lambda: _kernels.subset_extremes_numba(g, subsets), args.repeat)
        t_np = best(lambda: _kernels.subset_extremes_numpy(g, subsets), args.repeat)
        lo1, hi1 = _kernels.subset_extremes_numba(g, subsets)
        lo2, hi2 = _kernels.subset_extremes_numpy(g, subsets)
        diff = max(np.max(np.abs(lo1 - lo2)), np.max(np.abs(hi1 - hi2)))
        print(f"{n:>3} {k:>3} {math.comb(n, k):>8} {1e3 * t_jit:>10.2f} {1e3 * t_np:>10.2f} "
              f"{t_np / t_jit:>8.2f} {diff:>10.1e}")

    n, k = cases[0]
    a = rng.standard_normal((n // 2, n))
    g = a.T @ a
    subsets = _subsets(n, k)
    t_py = best(lambda: pure_python_sweep(g, subsets), 1)
    t_jit = best(lambda: _kernels.subset_extremes_numba(g, subsets), args.repeat)
    print(f"\nuncompiled Jacobi sweep, n={n} k={k}: {1e3 * t_py:.1f} ms ({t_py / t_jit:.0f}x the njit time)")


def pure_python_sweep(g, subsets):
    lo, hi = [], []
    for S in subsets:
        ev = _kernels._jacobi_eigenvalues_py(g[np.ix_(S, S)], 1e-12, _kernels.MAX_SWEEPS)
        lo.append(ev[0])
        hi.append(ev[-1])
    return lo, hi


if __name__ == "__main__":
    main()
