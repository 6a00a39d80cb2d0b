"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator. Ranks and determinants go through
fraction-free (Bareiss) elimination on an integer copy of the matrix: each
row is multiplied by the lcm of its denominators, which leaves the column
matroid (and hence every subset rank) unchanged.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
import numbers

import numpy as np

from . import _kernels
from .errors import NotPositiveDefinite, NotSymmetric

EIG_TOL = 1e-12
"""Off-diagonal Frobenius threshold at which the Jacobi sweep stops."""

REPORT_TOL = 1e-9
"""Accuracy promised for eigenvalues handed back to callers."""


def as_rational(value):
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be integers, ``"p/q"`` or decimals (``"0.125"``, ``"1e-3"``);
    decimals are read exactly over powers of ten. Floats are converted to the
    exact binary value they hold.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class RationalMatrix:
    """Immutable dense matrix of exact rationals.

    >>> A = RationalMatrix([[1, 1, 0, 0], [1, 1, 0, 1], [0, 0, 1, 1]])
    >>> A.shape
    (3, 4)
    >>> rank(A)
    3
    """

    __slots__ = ("_rows", "_m", "_n", "_int_rows", "_hash")

    def __init__(self, rows, n=None):
        rows = [tuple(as_rational(x) for x in row) for row in rows]
        m = len(rows)
        if m == 0:
            raise ValueError("a matrix needs at least one row")
        if n is None:
            n = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        self._rows = tuple(rows)
        self._m = m
        self._n = n
        self._int_rows = None
        self._hash = None

    @classmethod
    def from_columns(cls, columns, m=None):
        columns = [list(c) for c in columns]
        if not columns:
            if m is None:
                raise ValueError("row count required for a matrix without columns")
            return cls([[] for _ in range(m)], n=0)
        m = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(m)])

    @classmethod
    def identity(cls, n, scale=1):
        s = as_rational(scale)
        return cls([[s if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n=n)

    @classmethod
    def diag(cls, values):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (self._m, self._n)

    @property
    def m(self):
        return self._m

    @property
    def n(self):
        return self._n

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self, support):
        """Submatrix formed by the columns in ``support`` (in that order)."""
        support = list(support)
        return RationalMatrix([[r[j] for j in support] for r in self._rows], n=len(support))

    def submatrix(self, row_idx, col_idx):
        col_idx = list(col_idx)
        return RationalMatrix([[self._rows[i][j] for j in col_idx] for i in row_idx], n=len(col_idx))

    def without_column(self, j):
        return self.columns([c for c in range(self._n) if c != j])

    @property
    def T(self):
        if self._n == 0:
            raise ValueError("cannot transpose a matrix without columns")
        return RationalMatrix([[r[j] for r in self._rows] for j in range(self._n)])

    def vstack(self, other):
        other = other if isinstance(other, RationalMatrix) else RationalMatrix(other)
        if other.n != self._n:
            raise ValueError("column counts differ")
        return RationalMatrix(list(self._rows) + list(other.rows), n=self._n)

    def hstack_column(self, col):
        col = [as_rational(x) for x in col]
        if len(col) != self._m:
            raise ValueError("column length differs from row count")
        return RationalMatrix([list(r) + [c] for r, c in zip(self._rows, col)], n=self._n + 1)

    def scale(self, c):
        c = as_rational(c)
        return RationalMatrix([[c * x for x in r] for r in self._rows], n=self._n)

    def matvec(self, x):
        x = [as_rational(v) for v in x]
        if len(x) != self._n:
            raise ValueError(f"vector has length {len(x)}, expected {self._n}")
        return tuple(sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in self._rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if other.m != self._n:
                raise ValueError("inner dimensions differ")
            cols = [other.column(j) for j in range(other.n)]
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows],
                n=other.n,
            )
        return self.matvec(other)

    def __sub__(self, other):
        if other.shape != self.shape:
            raise ValueError("shapes differ")
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other.rows)], n=self._n
        )

    def __add__(self, other):
        if other.shape != self.shape:
            raise ValueError("shapes differ")
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other.rows)], n=self._n
        )

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._m, self._n, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RationalMatrix({self._m}x{self._n}: {body})"

    def max_abs(self):
        return max((abs(x) for r in self._rows for x in r), default=Fraction(0))

    def is_integer(self):
        return all(x.denominator == 1 for r in self._rows for x in r)

    def is_symmetric(self):
        if self._m != self._n:
            return False
        return all(self._rows[i][j] == self._rows[j][i] for i in range(self._n) for j in range(i))

    def is_zero(self):
        return all(x == 0 for r in self._rows for x in r)

    def gram(self):
        """Exact ``A^T A``."""
        cols = [self.column(j) for j in range(self._n)]
        g = [[Fraction(0)] * self._n for _ in range(self._n)]
        for i in range(self._n):
            for j in range(i, self._n):
                v = sum((a * b for a, b in zip(cols[i], cols[j])), Fraction(0))
                g[i][j] = v
                g[j][i] = v
        return RationalMatrix(g, n=self._n)

    def to_numpy(self):
        return np.array([[float(x) for x in r] for r in self._rows], dtype=float).reshape(self._m, self._n)

    def integer_rows(self):
        """Rows scaled to integers by their denominators' lcm (cached)."""
        if self._int_rows is None:
            out = []
            for r in self._rows:
                den = reduce(lcm, (x.denominator for x in r), 1)
                out.append(tuple(x.numerator * (den // x.denominator) for x in r))
            self._int_rows = tuple(out)
        return self._int_rows


def _as_matrix(M):
    return M if isinstance(M, RationalMatrix) else RationalMatrix(M)


def _bareiss_rank(rows):
    """Rank of an integer matrix given as a list of mutable int lists (consumed)."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[c]
            if f:
                for j in range(c + 1, n):
                    ri[j] = (p * ri[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, n):
                    ri[j] = (p * ri[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


_PRIME = (1 << 61) - 1


def _rank_mod_prime(rows):
    m = len(rows)
    n = len(rows[0])
    P = _PRIME
    w = [[x % P for x in r] for r in rows]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if w[i][c]), None)
        if piv is None:
            continue
        w[r], w[piv] = w[piv], w[r]
        inv = pow(w[r][c], P - 2, P)
        prow = [x * inv % P for x in w[r]]
        w[r] = prow
        for i in range(r + 1, m):
            f = w[i][c]
            if f:
                w[i] = [(a - f * b) % P for a, b in zip(w[i], prow)]
        r += 1
        if r == m:
            break
    return r


def _int_rank(rows):
    """Exact rank of an integer matrix (rows are consumed).

    Reduction modulo a prime can only lose rank, so a full rank found there
    is the true rank (some minor is nonzero mod p, hence nonzero); this
    skips the bignum elimination on the common independent case.
    """
    if not rows or not rows[0]:
        return 0
    if _rank_mod_prime(rows) == min(len(rows), len(rows[0])):
        return min(len(rows), len(rows[0]))
    return _bareiss_rank(rows)


def _subset_int_rows(M, support):
    ir = M.integer_rows()
    support = list(support)
    # put the shorter dimension in the rows; the inner loop runs over columns
    if len(support) < M.m:
        return [[row[j] for row in ir] for j in support]
    return [[row[j] for j in support] for row in ir]


def rank(M):
    """Exact rank over the rationals."""
    M = _as_matrix(M)
    if M.n == 0:
        return 0
    return _int_rank(_subset_int_rows(M, range(M.n)))


def column_rank(M, support):
    """Rank of the column submatrix ``M_S``."""
    support = list(support)
    if not support:
        return 0
    return _int_rank(_subset_int_rows(M, support))


def determinant(M):
    """Exact determinant of a square matrix by Bareiss elimination."""
    M = _as_matrix(M)
    if M.m != M.n:
        raise ValueError("determinant needs a square matrix")
    n = M.n
    # rescale each row to integers and undo the scaling at the end
    scale = Fraction(1)
    rows = []
    for r in M.rows:
        den = reduce(lcm, (x.denominator for x in r), 1)
        scale /= den
        rows.append([x.numerator * (den // x.denominator) for x in r])
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, n):
                ri[j] = (p * ri[j] - f * rows[c][j]) // prev
            ri[c] = 0
        prev = p
    return sign * rows[n - 1][n - 1] * scale


def rref(M):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    M = _as_matrix(M)
    a = [list(r) for r in M.rows]
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        if p != 1:
            a[r] = [x / p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def _primitive(v):
    """Scale a rational vector to coprime integers with a positive leading entry."""
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [x.numerator * (den // x.denominator) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def nullspace_basis(M, primitive=True):
    """Exact kernel basis, one vector per free column of the RREF.

    With ``primitive`` each vector is scaled to coprime integers whose first
    nonzero entry is positive.
    """
    M = _as_matrix(M)
    n = M.n
    if n == 0:
        return []
    a, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        basis.append(_primitive(v) if primitive else tuple(v))
    return basis


def solve(M, b):
    """One exact solution of ``M x = b`` or ``None`` when inconsistent."""
    M = _as_matrix(M)
    aug = M.hstack_column(b)
    a, pivots = rref(aug)
    n = M.n
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = a[i][n]
    return tuple(x)


@dataclass(frozen=True)
class LdlFactorization:
    L: RationalMatrix
    D: tuple

    def reconstruct(self):
        n = len(self.D)
        Lr = self.L.rows
        return RationalMatrix(
            [[sum((Lr[i][q] * self.D[q] * Lr[j][q] for q in range(n)), Fraction(0)) for j in range(n)]
             for i in range(n)]
        )


def _require_symmetric(M):
    if not M.is_symmetric():
        raise NotSymmetric(f"matrix of shape {M.shape} is not symmetric")


def ldl_cholesky(M):
    """Exact ``M = L diag(D) L^T`` by symmetric Gaussian elimination without pivoting.

    ``D[k]`` is the k-th elimination pivot; a non-positive pivot means ``M``
    is not positive definite.
    """
    M = _as_matrix(M)
    _require_symmetric(M)
    n = M.n
    h = [list(r) for r in M.rows]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = []
    for k in range(n):
        d = h[k][k]
        if d <= 0:
            raise NotPositiveDefinite(f"pivot {k} is {d}")
        D.append(d)
        for i in range(k + 1, n):
            L[i][k] = h[i][k] / d
        for i in range(k + 1, n):
            lik = L[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, i + 1):
                h[i][j] -= lik * h[k][j]
                h[j][i] = h[i][j]
    return LdlFactorization(RationalMatrix(L), tuple(D))


def is_positive_definite(M):
    """True iff every leading principal minor is positive (exact)."""
    M = _as_matrix(M)
    _require_symmetric(M)
    try:
        ldl_cholesky(M)
    except NotPositiveDefinite:
        return False
    return True


def is_positive_semidefinite(M):
    """Exact PSD test by symmetric elimination.

    A zero pivot is admissible only when its whole remaining row is zero.
    """
    M = _as_matrix(M)
    _require_symmetric(M)
    n = M.n
    h = [list(r) for r in M.rows]
    for k in range(n):
        p = h[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(h[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = h[i][k] / p
            if f == 0:
                continue
            for j in range(k + 1, n):
                h[i][j] -= f * h[k][j]
    return True


def sym_eigenvalues(M, tol=EIG_TOL):
    """Ascending eigenvalues of a symmetric float matrix by cyclic Jacobi rotations."""
    if isinstance(M, RationalMatrix):
        M = M.to_numpy()
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > tol:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    return _kernels.jacobi_eigenvalues(np.ascontiguousarray(a), float(tol), _kernels.MAX_SWEEPS)
