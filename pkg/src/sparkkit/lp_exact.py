"""Exact two-phase simplex for standard-form programs.

    optimize  c^T x   subject to  A x = b,  x >= 0

The tableau is kept fraction-free on integers; inputs and results are
:class:`fractions.Fraction`. Pivoting follows Bland's
rule (smallest improving column enters, ties in the ratio test leave by the
smallest basic index), so the method terminates on degenerate programs.
Free variables must be split by the caller.

Every optimal result carries a dual vector ``y`` that is checked exactly:
``b^T y`` equals the optimal value and ``c - A^T y`` has the sign required
by the optimization sense.
"""

from dataclasses import dataclass
import enum
from fractions import Fraction
import math

from .exact_linalg import RationalMatrix, as_rational

_ZERO = Fraction(0)


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    c: tuple
    A: tuple
    b: tuple
    sense: str = "max"

    def __init__(self, c, A, b, sense="max"):
        if sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        c = tuple(as_rational(x) for x in c)
        rows = A.rows if isinstance(A, RationalMatrix) else A
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        b = tuple(as_rational(x) for x in b)
        if len(rows) != len(b):
            raise ValueError(f"{len(rows)} constraint rows but {len(b)} right-hand sides")
        for i, r in enumerate(rows):
            if len(r) != len(c):
                raise ValueError(f"constraint row {i} has {len(r)} entries, objective has {len(c)}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", rows)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "sense", sense)

    @property
    def n_vars(self):
        return len(self.c)

    @property
    def n_rows(self):
        return len(self.b)


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Fraction = None
    x: tuple = None
    dual: tuple = None
    pivots: int = 0

    @property
    def optimal(self):
        return self.status is LpStatus.OPTIMAL


def _lcm_den(values):
    L = 1
    for v in values:
        d = v.denominator
        if d != 1:
            L = L * d // math.gcd(L, d)
    return L


class _Tableau:
    """Fraction-free tableau: every stored entry is ``D`` times the true value.

    Rows keep the right-hand side as their last entry and ``obj`` is the
    reduced-cost row, eliminated like any other row. Each update divides by
    the previous pivot exactly (the entries are minors of the original
    integer matrix), so no rational arithmetic is needed. ``D`` stays
    positive.
    """

    def __init__(self, rows, basis, D=1):
        self.rows = rows
        self.basis = basis
        self.D = D
        self.obj = None
        self.pivots = 0

    def pivot(self, r, s):
        D = self.D
        rows = self.rows
        prow = rows[r]
        p = prow[s]
        if p < 0:
            prow = [-a for a in prow]
            rows[r] = prow
            p = -p
        for i, row in enumerate(rows):
            if i != r:
                rows[i] = self._eliminate(row, prow, p, s, D)
        if self.obj is not None:
            self.obj = self._eliminate(self.obj, prow, p, s, D)
        self.D = p
        self.basis[r] = s
        self.pivots += 1

    @staticmethod
    def _eliminate(row, prow, p, s, D):
        f = row[s]
        if f:
            return [(a * p - f * b) // D for a, b in zip(row, prow)]
        if p == D:
            return row
        return [a * p // D for a in row]

    def price(self, cost):
        """Reduced-cost row for minimising the integer vector ``cost``."""
        D = self.D
        obj = [c * D for c in cost] + [0]
        for bi, row in zip(self.basis, self.rows):
            cb = cost[bi]
            if cb:
                obj = [o - cb * a for o, a in zip(obj, row)]
        self.obj = obj

    def run(self, allowed):
        """Bland's-rule simplex loop; returns False when unbounded."""
        obj = None
        while True:
            obj = self.obj
            s = next((j for j in allowed if obj[j] < 0), None)
            if s is None:
                return True
            r = None
            for i, row in enumerate(self.rows):
                a = row[s]
                if a > 0:
                    if r is None:
                        r = i
                        continue
                    lhs = row[-1] * self.rows[r][s]
                    rhs = self.rows[r][-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                        r = i
            if r is None:
                return False
            self.pivot(r, s)


class SimplexWorkspace:
    """Phase 1 done once for ``A x = b, x >= 0``; objectives are optimised on copies.

    With ``warm=True`` each optimal basis becomes the start for the next
    objective, which pays off when many similar objectives share one
    feasible region. The artificial columns stay in the tableau (they may not
    re-enter) because they hold the scaled basis inverse, from which the
    dual vector is read off.
    """

    def __init__(self, A, b, warm=True):
        base = A if isinstance(A, LinearProgram) else None
        if base is None:
            rows_in = A.rows if isinstance(A, RationalMatrix) else A
            rows_in = [list(r) for r in rows_in]
            n = len(rows_in[0]) if rows_in else 0
            base = LinearProgram([0] * n, rows_in, b)
        self._base = base
        self.warm = warm
        m = base.n_rows
        n = base.n_vars
        self.n = n
        self.m = m
        # row i of the tableau is scale[i] * (A_i | b_i), integral with b_i >= 0
        self._scale = []
        rows = []
        for i in range(m):
            L = _lcm_den(base.A[i] + (base.b[i],))
            if base.b[i] < 0:
                L = -L
            self._scale.append(L)
            art = [0] * m
            art[i] = 1
            rows.append([int(a * L) for a in base.A[i]] + art + [int(base.b[i] * L)])
        t = _Tableau(rows, [n + i for i in range(m)])
        t.price([0] * n + [1] * m)
        t.run(range(n + m))
        self.phase1_pivots = t.pivots
        self.feasible = t.obj[-1] >= 0
        if not self.feasible:
            return
        # drive zero-level artificials out of the basis, dropping redundant rows
        t.obj = None
        i = 0
        while i < len(t.rows):
            if t.basis[i] >= n:
                j = next((j for j in range(n) if t.rows[i][j] != 0), None)
                if j is None:
                    del t.rows[i]
                    del t.basis[i]
                    continue
                t.pivot(i, j)
            i += 1
        self._rows = t.rows
        self._basis = t.basis
        self._D = t.D

    def program(self, c, sense):
        p = object.__new__(LinearProgram)
        c = tuple(as_rational(x) for x in c)
        if len(c) != self.n:
            raise ValueError(f"objective has {len(c)} entries, expected {self.n}")
        if sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")
        object.__setattr__(p, "c", c)
        object.__setattr__(p, "A", self._base.A)
        object.__setattr__(p, "b", self._base.b)
        object.__setattr__(p, "sense", sense)
        return p

    def optimize(self, c, sense="max"):
        p = self.program(c, sense)
        if not self.feasible:
            return LpResult(LpStatus.INFEASIBLE, pivots=self.phase1_pivots)
        n, m = self.n, self.m
        L = _lcm_den(p.c)
        if sense == "max":
            L = -L
        cost = [int(x * L) for x in p.c] + [0] * m
        t = _Tableau([r[:] for r in self._rows], self._basis[:], self._D)
        t.price(cost)
        if not t.run(range(n)):
            return LpResult(LpStatus.UNBOUNDED, pivots=t.pivots)
        if self.warm:
            self._rows, self._basis, self._D = t.rows, t.basis, t.D
        D = t.D
        x = [_ZERO] * n
        for bi, row in zip(t.basis, t.rows):
            x[bi] = Fraction(row[-1], D)
        value = sum((ci * xi for ci, xi in zip(p.c, x) if xi), _ZERO)
        y = []
        for i in range(m):
            num = sum((p.c[bi] * row[n + i] for bi, row in zip(t.basis, t.rows) if bi < n), _ZERO)
            y.append(num * self._scale[i] / D)
        y = tuple(y)
        check_dual(p, y, value)
        return LpResult(LpStatus.OPTIMAL, value, tuple(x), y, t.pivots)


def solve_lp(p):
    """Solve a :class:`LinearProgram` exactly.

    >>> res = solve_lp(LinearProgram([1, 0], [[1, 1]], [1], sense="max"))
    >>> res.status.value, res.value, res.x
    ('optimal', Fraction(1, 1), (Fraction(1, 1), Fraction(0, 1)))
    """
    if p.n_rows == 0:
        if any((x > 0) if p.sense == "max" else (x < 0) for x in p.c):
            return LpResult(LpStatus.UNBOUNDED)
        x = tuple(_ZERO for _ in p.c)
        return LpResult(LpStatus.OPTIMAL, _ZERO, x, (), 0)
    return SimplexWorkspace(p, None, warm=False).optimize(p.c, p.sense)


def check_dual(p, y, value):
    """Raise ``ArithmeticError`` unless ``y`` certifies optimality of ``value``."""
    y = [as_rational(v) for v in y]
    value = as_rational(value)
    if sum((bi * yi for bi, yi in zip(p.b, y)), _ZERO) != value:
        raise ArithmeticError("dual objective differs from primal value")
    for j in range(p.n_vars):
        red = p.c[j] - sum((p.A[i][j] * y[i] for i in range(p.n_rows)), _ZERO)
        if (p.sense == "max" and red > 0) or (p.sense == "min" and red < 0):
            raise ArithmeticError(f"reduced cost of column {j} has the wrong sign")


def is_feasible_point(p, x):
    if len(x) != p.n_vars or any(v < 0 for v in x):
        return False
    return all(sum((a * v for a, v in zip(r, x)), _ZERO) == bi for r, bi in zip(p.A, p.b))
