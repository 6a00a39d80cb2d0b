"""Nullspace constant by exact linear programming.

    alpha_k = max ||x_S||_1  s.t.  A x = 0, ||x||_1 = 1, |S| <= k

For a fixed support ``S`` (only ``|S| = k`` matters, the objective grows with
``S``) and sign pattern ``s``, the inner problem is the LP

    max  sum_{i in S} s_i (u_i - v_i)
    s.t. A (u - v) = 0,  sum_i (u_i + v_i) = 1,  u, v >= 0.

Why per-sign LPs: with a single LP maximising ``sum_{i in S} (u_i + v_i)``
the optimum can park mass on ``u_i = v_i``, which counts toward the
objective without being part of any kernel vector. A signed objective is
indifferent to such slack, and any slack shrinks the normalised ``x = u - v``,
so a positive optimum is attained with ``||u - v||_1 = 1`` exactly. Sign
patterns ``s`` and ``-s`` give the same value (the kernel is symmetric), so
the first sign is fixed to ``+1``: ``2^(k-1)`` LPs per support.

Because ``alpha_k <= 1``, the scan stops at the first LP reaching 1.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import os

from .errors import AlphaOutOfRange, OrderOutOfRange
from .exact_linalg import as_rational, rank
from .lp_exact import SimplexWorkspace
from .recovery import sign_patterns
from .spark import has_circuit_at_most

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class NscReport:
    k: int
    alpha: Fraction
    witness_support: tuple = None
    witness_vector: tuple = None
    witness_signs: tuple = None


def k1_norm(x, k):
    """Sum of the ``k`` largest absolute entries."""
    return sum(sorted((abs(v) for v in x), reverse=True)[:k], _ZERO)


def _workspace(A):
    n = A.n
    rows = [list(r) + [-v for v in r] for r in A.rows]
    rows.append([1] * (2 * n))
    return SimplexWorkspace(rows, [0] * A.m + [1], warm=True)


def _objective(n, S, signs):
    obj = [0] * (2 * n)
    for i, s in zip(S, signs):
        obj[i] = s
        obj[n + i] = -s
    return obj


def _scan(A, supports, k):
    # one feasible region for every (S, signs); only the objective changes
    ws = _workspace(A)
    n = A.n
    best = None
    for S in supports:
        for signs in sign_patterns(k):
            res = ws.optimize(_objective(n, S, signs), "max")
            if best is None or res.value > best[0]:
                x = tuple(res.x[i] - res.x[n + i] for i in range(n))
                best = (res.value, S, signs, x)
                if res.value == _ONE:
                    return best
    return best


def _scan_chunk(args):
    return _scan(*args)


def resolve_jobs(jobs=None):
    if jobs is None:
        jobs = int(os.environ.get("SPARKKIT_JOBS", "1") or 1)
    return max(1, int(jobs))


def nsc(A, k, jobs=None):
    """Exact nullspace constant of order ``k`` with an attaining kernel vector.

    A matrix with independent columns has ``alpha_k = 0`` and no witness.
    """
    if not 1 <= k <= A.n:
        raise OrderOutOfRange(f"order {k} outside 1..{A.n}")
    if rank(A) == A.n:
        return NscReport(k, _ZERO)
    supports = list(combinations(range(A.n), k))
    jobs = resolve_jobs(jobs)
    if jobs == 1 or len(supports) < 2 * jobs:
        best = _scan(A, supports, k)
    else:
        size = -(-len(supports) // (4 * jobs))
        chunks = [(A, supports[i:i + size], k) for i in range(0, len(supports), size)]
        best = None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_scan_chunk, chunks):
                # chunks come back in order; strict > keeps the lexicographic tie-break
                if part is not None and (best is None or part[0] > best[0]):
                    best = part
    value, S, signs, x = best
    return NscReport(k, value, S, x, signs)


def nsp_certify(A, k, alpha):
    """Does ``||x||_{k,1} <= alpha ||x||_1`` hold on the whole kernel?"""
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise AlphaOutOfRange(f"alpha {alpha} outside [0, 1]")
    return nsc(A, k).alpha <= alpha


def nsp_nontrivial_decide(A, k, cross_check=True, jobs=None):
    """``alpha_k < 1`` iff no circuit has at most ``k`` columns.

    With ``cross_check`` the LP value is computed as well and any
    disagreement raises ``ArithmeticError``.
    """
    if not 1 <= k <= A.n:
        raise OrderOutOfRange(f"order {k} outside 1..{A.n}")
    found, _ = has_circuit_at_most(A, k)
    if cross_check:
        lp_one = nsc(A, k, jobs=jobs).alpha == _ONE
        if lp_one != found:
            raise ArithmeticError("LP nullspace constant disagrees with the circuit criterion")
    return not found
