"""Restricted isometry constants, the scaling and spectral-floor bounds, sparse PCA.

For a support ``S`` the extreme eigenvalues of the Gram block ``A_S^T A_S``
bound ``||A x||^2 / ||x||^2`` over vectors supported on ``S``. Adding a
column can only widen that spectrum (Cauchy interlacing), so the extremes
over all ``|S| <= k`` are attained on ``|S| = k`` and only those subsets are
enumerated.

Eigenvalues are floating point. The one threshold that needs exactness,
``delta_k^L = 1`` (a singular Gram block), is decided by an exact circuit
search instead, and the float value is never allowed to contradict it.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import math

import numpy as np

from . import _kernels
from .errors import (
    DeltaOutOfRange,
    NotInteger,
    NotSymmetric,
    OrderOutOfRange,
    SparkTooSmall,
    ZeroMatrix,
)
from .exact_linalg import EIG_TOL, REPORT_TOL, RationalMatrix, as_rational, is_positive_semidefinite
from .spark import has_circuit_at_most

PCA_MARGIN = 1e-9
"""Slack in ``sparse_pca_decide``: a value within this of ``lambda`` counts as reaching it."""

_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class RipReport:
    k: int
    delta_lower: float
    delta_upper: float
    delta: float
    witness_lower: tuple
    witness_upper: tuple
    exact_kernel_flag: bool
    lambda_min: float
    lambda_max: float


def _check_order(n, k):
    if not 1 <= k <= n:
        raise OrderOutOfRange(f"order {k} outside 1..{n}")


def _subsets(n, k):
    return np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)


def _first_within(values, target, best):
    # lexicographically first support among the (numerically) extremal ones
    slack = 1e-12 * max(1.0, abs(target))
    idx = np.flatnonzero(np.abs(values - target) <= slack)
    return int(idx[0]) if idx.size else int(best)


def ric(A, k):
    """Lower, upper and symmetric restricted isometry constants of order ``k``."""
    n = A.n
    _check_order(n, k)
    subsets = _subsets(n, k)
    lo, hi = _kernels.subset_extremes(A.gram().to_numpy(), subsets, EIG_TOL)
    i_lo = int(np.argmin(lo))
    i_hi = int(np.argmax(hi))
    lmin = float(lo[i_lo])
    lmax = float(hi[i_hi])
    found, circuit = has_circuit_at_most(A, k)
    if found:
        delta_lower = 1.0
        lmin = 0.0
        witness_lower = circuit.support
    else:
        delta_lower = max(0.0, 1.0 - lmin)
        if delta_lower >= 1.0:
            # no circuit, so the true minimum is positive
            delta_lower = _BELOW_ONE
        witness_lower = tuple(int(v) for v in subsets[_first_within(lo, lmin, i_lo)])
    delta_upper = max(0.0, lmax - 1.0)
    witness_upper = tuple(int(v) for v in subsets[_first_within(hi, lmax, i_hi)])
    return RipReport(
        k,
        delta_lower,
        delta_upper,
        max(delta_lower, delta_upper),
        witness_lower,
        witness_upper,
        found,
        lmin,
        lmax,
    )


def _exact_rip(A, k, delta):
    G = A.gram()
    for S in combinations(range(A.n), k):
        block = G.submatrix(S, S)
        low = block - RationalMatrix.identity(k, 1 - delta)
        high = RationalMatrix.identity(k, 1 + delta) - block
        if not (is_positive_semidefinite(low) and is_positive_semidefinite(high)):
            return False
    return True


def rip_certify(A, k, delta):
    """Does ``A`` satisfy the RIP of order ``k`` with constant ``delta``?

    ``delta`` is read as an exact rational. Clear cases are settled by the
    float constants; when ``delta`` is within ``REPORT_TOL`` of ``delta_k``
    both inequalities are checked exactly on every support.
    """
    d = as_rational(delta)
    if not 0 < d < 1:
        raise DeltaOutOfRange(f"delta {delta} outside (0, 1)")
    _check_order(A.n, k)
    found, _ = has_circuit_at_most(A, k)
    if found:
        return False
    rep = ric(A, k)
    if rep.delta < float(d) - REPORT_TOL:
        return True
    if rep.delta > float(d) + REPORT_TOL:
        return False
    return _exact_rip(A, k, d)


def _pow4_at_least(t):
    """Smallest integer ``e`` with ``4**e >= t`` for a rational ``t > 0``."""
    p, q = t.numerator, t.denominator
    e = (p.bit_length() - q.bit_length()) // 2

    def ok(e):
        return 4 ** e * q >= p if e >= 0 else q >= p * 4 ** (-e)

    while not ok(e):
        e += 1
    while ok(e - 1):
        e -= 1
    return e


def rip_scale(A):
    """Return ``(A / C, C)`` with ``C`` the least power of two at least ``alpha sqrt(m n)``.

    Then ``||A/C||_2 <= ||A/C||_F <= 1``, so the upper constant of the scaled
    matrix vanishes for every order.
    """
    if A.is_zero():
        raise ZeroMatrix("matrix has no nonzero entry")
    alpha = A.max_abs()
    e = _pow4_at_least(alpha * alpha * A.m * A.n)
    C = Fraction(2) ** e
    return A.scale(1 / C), C


def spectral_floor(A, k):
    """``1 / (k m alpha^2)^(k-1)``, a lower bound on every ``lambda_min(A_S^T A_S)``, ``|S| <= k``.

    Valid for integer matrices whose spark exceeds ``k``.
    """
    if not A.is_integer():
        raise NotInteger("spectral floor needs an integer matrix")
    _check_order(A.n, k)
    found, circuit = has_circuit_at_most(A, k)
    if found:
        raise SparkTooSmall(f"circuit {circuit.support} has at most {k} columns")
    alpha = A.max_abs()
    return Fraction(1, int(k * A.m * alpha * alpha) ** (k - 1))


def _require_symmetric(H):
    if H.m != H.n or not H.is_symmetric():
        raise NotSymmetric("sparse PCA needs a symmetric matrix")


def sparse_pca_max(H, k):
    """Largest top eigenvalue over principal submatrices of size at most ``k``.

    Returns ``(value, support)``.
    """
    _require_symmetric(H)
    _check_order(H.n, k)
    subsets = _subsets(H.n, k)
    _, hi = _kernels.subset_extremes(H.to_numpy(), subsets, EIG_TOL)
    best = int(np.argmax(hi))
    value = float(hi[best])
    return value, tuple(int(v) for v in subsets[_first_within(hi, value, best)])


def sparse_pca_decide(H, k, lam):
    """True iff the sparse PCA value is below ``lam`` by more than ``PCA_MARGIN``."""
    value, _ = sparse_pca_max(H, k)
    return value < float(lam) - PCA_MARGIN
