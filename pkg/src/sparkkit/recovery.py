"""Sparsest and least-l1 solutions of ``A x = b``, l0-l1 equivalence, mutual coherence.

Equivalence test
----------------
Take a support ``S`` and sign pattern ``s`` on it. A vector ``x`` with that
support and those signs is the unique l1 minimiser for ``b = A x`` iff

    s^T h_S + ||h_{S^c}||_1 > 0      for every nonzero h in ker A.

The left side is the directional derivative of ``||.||_1`` at ``x`` along
``h``, and ``||.||_1`` is convex, so the condition only depends on ``(S, s)``
and not on the magnitudes of ``x``. It fails in exactly two ways:

* ``A_S`` has a nontrivial kernel (some ``h`` supported on ``S``), or
* some kernel vector has ``s^T h_S = -1`` and ``||h_{S^c}||_1 <= 1``.

The second case is one exact LP per ``(S, s)``: minimise
``sum_{i not in S} (u_i + v_i)`` over ``A (u - v) = 0``,
``s^T (u - v)_S = -1``, ``u, v >= 0``. Slack (``u_i, v_i`` both positive)
only inflates the objective, so the LP optimum is the true minimum. Since
``ker A`` is symmetric, ``s`` and ``-s`` give the same answer and the first
sign is fixed to ``+1``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
import math

from .errors import Infeasible, OrderOutOfRange, ZeroCoherence, ZeroColumn
from .exact_linalg import as_rational, column_rank, nullspace_basis, rank, solve
from .lp_exact import LinearProgram, LpStatus, SimplexWorkspace, solve_lp

_ZERO = Fraction(0)


def _vec(b, m):
    b = tuple(as_rational(x) for x in b)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    return b


def l1_norm(x):
    return sum((abs(v) for v in x), _ZERO)


def support_of(x):
    return tuple(i for i, v in enumerate(x) if v != 0)


@dataclass(frozen=True)
class SparseSolution:
    x: tuple
    support: tuple

    @property
    def l0(self):
        return len(self.support)


def solve_p0(A, b):
    """Sparsest solution of ``A x = b`` by support enumeration in increasing size.

    Raises :class:`Infeasible` when ``b`` is outside the range of ``A``.
    The lexicographically first optimal support is reported.
    """
    b = _vec(b, A.m)
    n = A.n
    if all(v == 0 for v in b):
        return SparseSolution(tuple([_ZERO] * n), ())
    aug = A.hstack_column(b)
    if rank(aug) != rank(A):
        raise Infeasible("right-hand side is not in the column space")
    for s in range(1, n + 1):
        for S in combinations(range(n), s):
            r = column_rank(aug, S)
            if r == column_rank(aug, S + (n,)):
                y = solve(A.columns(S), b)
                x = [_ZERO] * n
                for j, v in zip(S, y):
                    x[j] = v
                return SparseSolution(tuple(x), S)
    raise Infeasible("right-hand side is not in the column space")


@dataclass(frozen=True)
class L1Solution:
    x: tuple
    value: Fraction
    unique: bool


def _split_rows(A):
    return [list(r) + [-v for v in r] for r in A.rows]


def solve_p1(A, b, check_unique=True):
    """Exact l1 minimiser of ``A x = b`` through the split ``x = u - v``.

    Uniqueness is decided by fixing the optimal value and maximising then
    minimising each coordinate over the optimal face.
    """
    b = _vec(b, A.m)
    n = A.n
    rows = _split_rows(A)
    res = solve_lp(LinearProgram([1] * (2 * n), rows, b, sense="min"))
    if res.status is LpStatus.INFEASIBLE:
        raise Infeasible("right-hand side is not in the column space")
    x = tuple(res.x[i] - res.x[n + i] for i in range(n))
    value = res.value
    unique = True
    if check_unique:
        face = SimplexWorkspace(rows + [[1] * (2 * n)], list(b) + [value])
        for i in range(n):
            obj = [0] * (2 * n)
            obj[i] = 1
            obj[n + i] = -1
            hi = face.optimize(obj, "max")
            lo = face.optimize(obj, "min")
            if hi.value != lo.value:
                unique = False
                break
    return L1Solution(x, value, unique)


@dataclass(frozen=True)
class Counterexample:
    """``x_sparse`` is k-sparse; ``alternative`` solves the same system with ``||.||_1`` no larger."""

    x_sparse: tuple
    b: tuple
    alternative: tuple
    support: tuple
    signs: tuple


@dataclass(frozen=True)
class RecoveryVerdict:
    k: int
    equivalent: bool
    counterexample: Counterexample = None


def _counterexample(A, S, signs, h):
    n = A.n
    t = max(abs(h[i]) for i in S)
    x = [_ZERO] * n
    for i, s in zip(S, signs):
        x[i] = t * s
    alt = tuple(xi + hi for xi, hi in zip(x, h))
    return Counterexample(tuple(x), A.matvec(x), alt, tuple(S), tuple(signs))


def sign_patterns(size):
    """Sign vectors of length ``size`` with the first entry fixed to +1."""
    if size == 0:
        return [()]
    return [(1,) + rest for rest in product((1, -1), repeat=size - 1)]


def violating_direction(A, S, signs):
    """A kernel vector breaking uniqueness for ``(S, signs)``, or ``None``."""
    n = A.n
    if column_rank(A, S) < len(S):
        (k0, *_) = nullspace_basis(A.columns(S))
        h = [_ZERO] * n
        for j, v in zip(S, k0):
            h[j] = v
        if sum(s * h[i] for i, s in zip(S, signs)) > 0:
            h = [-v for v in h]
        return tuple(h)
    rows = _split_rows(A)
    norm_row = [0] * (2 * n)
    for i, s in zip(S, signs):
        norm_row[i] = s
        norm_row[n + i] = -s
    inS = set(S)
    obj = [0 if (j % n) in inS else 1 for j in range(2 * n)]
    res = solve_lp(LinearProgram(obj, rows + [norm_row], [0] * A.m + [-1], sense="min"))
    if res.status is LpStatus.INFEASIBLE or res.value > 1:
        return None
    return tuple(res.x[i] - res.x[n + i] for i in range(n))


def check_l0_l1_equivalence(A, k):
    """Decide whether l1 minimisation recovers every k-sparse vector uniquely.

    Supports of size ``1..k`` are scanned in increasing size and
    lexicographic order; the first failing ``(S, signs)`` yields a
    counterexample.
    """
    if not 1 <= k <= A.n:
        raise OrderOutOfRange(f"order {k} outside 1..{A.n}")
    for size in range(1, k + 1):
        for S in combinations(range(A.n), size):
            for signs in sign_patterns(size):
                h = violating_direction(A, S, signs)
                if h is not None:
                    return RecoveryVerdict(k, False, _counterexample(A, S, signs, h))
    return RecoveryVerdict(k, True, None)


@dataclass(frozen=True)
class Coherence:
    mu: float
    mu_squared: Fraction
    pair: tuple

    def compare(self, t):
        """Sign of ``mu - t`` for a rational ``t >= 0``, decided exactly."""
        t = as_rational(t)
        if t < 0:
            return 1
        sq = t * t
        return (self.mu_squared > sq) - (self.mu_squared < sq)


def coherence(A):
    """Mutual coherence with its exact square and the attaining column pair."""
    cols = [A.column(j) for j in range(A.n)]
    norms = [sum((x * x for x in c), _ZERO) for c in cols]
    for j, nn in enumerate(norms):
        if nn == 0:
            raise ZeroColumn(f"column {j} is zero")
    best = _ZERO
    pair = None
    for i, j in combinations(range(A.n), 2):
        ip = sum((x * y for x, y in zip(cols[i], cols[j])), _ZERO)
        val = ip * ip / (norms[i] * norms[j])
        if pair is None or val > best:
            best = val
            pair = (i, j)
    return Coherence(math.sqrt(best), best, pair)


def mutual_coherence(A):
    return coherence(A).mu


def coherence_spark_bound(A):
    """``1 + 1/mu``, a lower bound on the spark."""
    c = coherence(A)
    if c.mu_squared == 0:
        raise ZeroCoherence("columns are pairwise orthogonal; the bound is infinite")
    return 1.0 + 1.0 / c.mu


def coherence_bound_holds(A, spark_value):
    """Exact check of ``spark >= 1 + 1/mu``, i.e. ``(spark - 1)^2 mu^2 >= 1``.

    ``spark_value`` of ``None`` (no circuit) satisfies every bound.
    """
    if spark_value is None:
        return True
    c = coherence(A)
    return (spark_value - 1) ** 2 * c.mu_squared >= 1
