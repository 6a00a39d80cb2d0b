"""Circuits and spark of a rational matrix.

A circuit is an inclusion-minimal dependent column set ``C``: ``rank(A_C) =
|C| - 1`` and every single deletion keeps that rank. The spark is the size of
the smallest circuit. A matrix with independent columns has no circuit; that
case is reported as ``SparkValue(None, None)`` rather than by an infinite or
``n + 1`` convention.

Supports are 0-based sorted tuples, enumerated by size and then
lexicographically, so witnesses are deterministic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import Infeasible, NotFullRowRank, OrderOutOfRange
from .exact_linalg import RationalMatrix, column_rank, nullspace_basis, rank
from .recovery import solve_p0

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Circuit:
    support: tuple
    witness: tuple

    def __len__(self):
        return len(self.support)


@dataclass(frozen=True)
class SparkValue:
    value: int = None
    witness: Circuit = None

    @property
    def no_circuit(self):
        return self.value is None

    def at_most(self, k):
        return self.value is not None and self.value <= k


NO_CIRCUIT = SparkValue(None, None)


def _check_order(A, k):
    if not 1 <= k <= A.n:
        raise OrderOutOfRange(f"order {k} outside 1..{A.n}")


def circuit_from_support(A, S):
    """Attach the (unique up to scale) kernel vector of ``A_S`` to a circuit support."""
    S = tuple(S)
    (k0,) = nullspace_basis(A.columns(S))
    x = [_ZERO] * A.n
    for j, v in zip(S, k0):
        x[j] = v
    return Circuit(S, tuple(x))


def is_circuit(A, S):
    """Definitional test ``rank(A_C) = |C| - 1 = rank(A_{C - j})`` for all ``j``."""
    S = tuple(sorted(S))
    if not S:
        raise ValueError("support must be nonempty")
    c = len(S)
    if column_rank(A, S) != c - 1:
        return False
    return all(column_rank(A, S[:i] + S[i + 1:]) == c - 1 for i in range(c))


def _first_dependent(A, max_size):
    for s in range(1, max_size + 1):
        for S in combinations(range(A.n), s):
            if column_rank(A, S) < s:
                return S
    return None


def spark(A):
    """Smallest circuit size with a lexicographically first witness."""
    if rank(A) == A.n:
        return NO_CIRCUIT
    S = _first_dependent(A, A.n)
    return SparkValue(len(S), circuit_from_support(A, S))


def has_circuit_at_most(A, k):
    """``(True, circuit)`` if some circuit has at most ``k`` columns, else ``(False, None)``."""
    _check_order(A, k)
    S = _first_dependent(A, k)
    if S is None:
        return False, None
    return True, circuit_from_support(A, S)


def enumerate_circuits(A, max_size=None):
    """Every circuit of size ``<= max_size``, level by level.

    A size-``s`` candidate is tested only if all of its ``(s-1)``-subsets are
    independent; such a set is then either independent or a circuit.
    """
    n = A.n
    max_size = n if max_size is None else min(max_size, n)
    independent = {()}
    out = []
    for s in range(1, max_size + 1):
        nxt = set()
        for S in combinations(range(n), s):
            if any(S[:i] + S[i + 1:] not in independent for i in range(s)):
                continue
            if column_rank(A, S) == s:
                nxt.add(S)
            else:
                out.append(circuit_from_support(A, S))
        independent = nxt
        if not independent:
            break
    return out


def _full_support_kernel_vector(N, size):
    """A combination of kernel basis rows ``N`` with no zero coordinate, if one exists."""
    if not N or any(all(v[i] == 0 for v in N) for i in range(size)):
        return None
    # a coordinate vanishes for at most finitely many t, so a small t works
    for t in range(1, size * len(N) + 2):
        x = [sum((v[i] * t ** q for q, v in enumerate(N)), _ZERO) for i in range(size)]
        if all(xi != 0 for xi in x):
            return x
    raise ArithmeticError("no full-support kernel combination found")


def has_nullspace_vector_of_support(A, k):
    """Is there ``x`` with ``A x = 0`` and exactly ``k`` nonzeros? Returns ``(bool, x)``."""
    _check_order(A, k)
    for S in combinations(range(A.n), k):
        if column_rank(A, S) == k:
            continue
        N = nullspace_basis(A.columns(S))
        y = _full_support_kernel_vector(N, k)
        if y is not None:
            x = [_ZERO] * A.n
            for j, v in zip(S, y):
                x[j] = v
            return True, tuple(x)
    return False, None


def full_spark_violation(A):
    """First ``m``-column subset that is singular, or ``None`` for a full spark frame."""
    m, n = A.shape
    if m > n or rank(A) != m:
        raise NotFullRowRank(f"expected full row rank {m} with m <= n; shape is {A.shape}")
    for S in combinations(range(n), m):
        if column_rank(A, S) < m:
            return S
    return None


def is_full_spark(A):
    return full_spark_violation(A) is None


def min_circuit_through_column(B, col):
    """Smallest circuit containing column ``col``.

    Drops the column, finds the sparsest ``x`` with ``A x = b_col`` and adds
    one to its support size.
    """
    if not 0 <= col < B.n:
        raise OrderOutOfRange(f"column {col} outside 0..{B.n - 1}")
    rest = [j for j in range(B.n) if j != col]
    b = B.column(col)
    if B.n == 1:
        if all(v == 0 for v in b):
            return SparkValue(1, Circuit((col,), (Fraction(1),)))
        return NO_CIRCUIT
    try:
        sol = solve_p0(B.columns(rest), b)
    except Infeasible:
        return NO_CIRCUIT
    x = [_ZERO] * B.n
    x[col] = Fraction(-1)
    for j, v in zip(rest, sol.x):
        x[j] = v
    support = tuple(sorted((col,) + tuple(rest[i] for i in sol.support)))
    return SparkValue(len(support), Circuit(support, tuple(x)))


def spark_via_p0(A):
    """Spark through one sparsest-solution problem per column.

    For column ``j``, a unit row selecting ``j`` is appended and the system is
    solved for the last unit vector: the sparsest ``x`` has ``A x = 0``,
    ``x_j = 1``, so its support is the smallest circuit through ``j``.
    """
    m, n = A.shape
    best = NO_CIRCUIT
    rhs = [0] * m + [1]
    for j in range(n):
        unit = [[1 if c == j else 0 for c in range(n)]]
        try:
            sol = solve_p0(A.vstack(RationalMatrix(unit)), rhs)
        except Infeasible:
            continue
        if best.value is None or sol.l0 < best.value:
            best = SparkValue(sol.l0, Circuit(sol.support, sol.x))
    return best
