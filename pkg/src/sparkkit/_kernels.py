"""Floating-point inner loops.

Every kernel here is written once as plain Python over numpy arrays. When
numba is importable and ``SPARKKIT_DISABLE_NUMBA`` is unset, the loops are
compiled with ``@njit``; otherwise the batched subset sweep switches to a
vectorised ``numpy.linalg.eigvalsh`` path and the Jacobi solver runs as
ordinary Python.
"""

import math
import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAVE_NUMBA = False


def _env_disabled():
    return os.environ.get("SPARKKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = HAVE_NUMBA and not _env_disabled()

MAX_SWEEPS = 100


def _jacobi_eigenvalues_py(a, tol, max_sweeps):
    n = a.shape[0]
    w = a.copy()
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += w[i, j] * w[i, j]
    # absolute tol alone never terminates on large-norm input
    thresh = max(tol, 4.0 * 2.220446049250313e-16 * math.sqrt(frob))
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += w[p, q] * w[p, q]
        if math.sqrt(2.0 * off) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                theta = (w[q, q] - w[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = w[k, p]
                    akq = w[k, q]
                    w[k, p] = c * akp - s * akq
                    w[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = w[p, k]
                    aqk = w[q, k]
                    w[p, k] = c * apk - s * aqk
                    w[q, k] = s * apk + c * aqk
    out = np.empty(n)
    for i in range(n):
        out[i] = w[i, i]
    out.sort()
    return out


def _subset_extremes_loop(g, subsets, tol, max_sweeps):
    count = subsets.shape[0]
    k = subsets.shape[1]
    lo = np.empty(count)
    hi = np.empty(count)
    sub = np.empty((k, k))
    for t in range(count):
        for i in range(k):
            for j in range(k):
                sub[i, j] = g[subsets[t, i], subsets[t, j]]
        ev = jacobi_eigenvalues(sub, tol, max_sweeps)
        lo[t] = ev[0]
        hi[t] = ev[k - 1]
    return lo, hi


def subset_extremes_numpy(g, subsets, tol=1e-12, max_sweeps=MAX_SWEEPS):
    """Smallest and largest eigenvalue of ``g[S, S]`` for every row ``S`` of ``subsets``."""
    g = np.asarray(g, dtype=float)
    subsets = np.asarray(subsets, dtype=np.int64)
    if subsets.shape[0] == 0:
        return np.empty(0), np.empty(0)
    blocks = g[subsets[:, :, None], subsets[:, None, :]]
    ev = np.linalg.eigvalsh(blocks)
    return ev[:, 0].copy(), ev[:, -1].copy()


if USE_NUMBA:
    jacobi_eigenvalues = njit(cache=True)(_jacobi_eigenvalues_py)
    _subset_extremes_jit = njit(cache=True)(_subset_extremes_loop)

    def subset_extremes_numba(g, subsets, tol=1e-12, max_sweeps=MAX_SWEEPS):
        g = np.ascontiguousarray(g, dtype=np.float64)
        subsets = np.ascontiguousarray(subsets, dtype=np.int64)
        if subsets.shape[0] == 0:
            return np.empty(0), np.empty(0)
        return _subset_extremes_jit(g, subsets, float(tol), int(max_sweeps))

    subset_extremes = subset_extremes_numba
else:
    jacobi_eigenvalues = _jacobi_eigenvalues_py
    subset_extremes_numba = None
    subset_extremes = subset_extremes_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
