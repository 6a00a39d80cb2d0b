from fractions import Fraction
from itertools import combinations
import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import graphs, matrices
from sparkkit import RationalMatrix
from sparkkit.errors import NotPositiveDefinite, NotSymmetric
from sparkkit.exact_linalg import (
    REPORT_TOL,
    as_rational,
    column_rank,
    determinant,
    is_positive_definite,
    is_positive_semidefinite,
    ldl_cholesky,
    nullspace_basis,
    rank,
    solve,
    sym_eigenvalues,
)
from sparkkit.graphs import adjacency_matrix, complete_graph
from sparkkit.reductions import cholesky_bounds_hold, cholesky_entry_bounds


def test_as_rational_inputs():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational("0.125") == Fraction(1, 8)
    assert as_rational("1e-3") == Fraction(1, 1000)
    assert as_rational(0.5) == Fraction(1, 2)
    assert as_rational(np.int64(7)) == 7
    with pytest.raises(TypeError):
        as_rational(object())


def test_entries_are_canonical():
    M = RationalMatrix([["2/4", "0/5"]])
    a, b = M.rows[0]
    assert (a.numerator, a.denominator) == (1, 2)
    assert (b.numerator, b.denominator) == (0, 1)


def test_rank_examples(example1):
    assert rank(example1) == 3
    assert rank(RationalMatrix.identity(5)) == 5
    assert rank(RationalMatrix.zeros(3, 4)) == 0


def test_nullspace_examples(example1):
    (v,) = nullspace_basis(example1)
    assert v == (1, -1, 0, 0)
    assert nullspace_basis(RationalMatrix.identity(3)) == []
    assert nullspace_basis(RationalMatrix([[1, 1]])) == [(1, -1)]


def test_ldl_examples():
    f = ldl_cholesky(RationalMatrix.identity(2))
    assert f.L == RationalMatrix.identity(2) and f.D == (1, 1)
    f = ldl_cholesky(RationalMatrix([[4, 2], [2, 3]]))
    assert f.L == RationalMatrix([[1, 0], ["1/2", 1]])
    assert f.D == (4, 2)


def test_ldl_k3_shift():
    n = 3
    H = adjacency_matrix(complete_graph(n)) + RationalMatrix.identity(n, n * n)
    f = ldl_cholesky(H)
    assert all(Fraction(77, 9) <= d <= 9 for d in f.D)
    d_lo, d_hi, l_lo, l_hi = cholesky_entry_bounds(n)
    assert d_lo == Fraction(77, 9)
    assert all(l_lo <= f.L[i, j] <= l_hi for i in range(n) for j in range(i))


def test_ldl_errors():
    with pytest.raises(NotSymmetric):
        ldl_cholesky(RationalMatrix([[1, 2], [0, 1]]))
    with pytest.raises(NotPositiveDefinite):
        ldl_cholesky(RationalMatrix([[1, 2], [2, 1]]))
    with pytest.raises(NotPositiveDefinite):
        ldl_cholesky(RationalMatrix([[2, 2], [2, 2]]))


def test_positive_definite_examples():
    assert is_positive_definite(RationalMatrix.identity(3))
    assert not is_positive_definite(RationalMatrix([[1, 2], [2, 1]]))
    assert not is_positive_definite(RationalMatrix([[2, 2], [2, 2]]))
    assert is_positive_semidefinite(RationalMatrix([[2, 2], [2, 2]]))
    assert not is_positive_semidefinite(RationalMatrix([[0, 1], [1, 0]]))
    with pytest.raises(NotSymmetric):
        is_positive_definite(RationalMatrix([[1, 1], [0, 1]]))


def test_eigen_examples():
    ev = sym_eigenvalues(adjacency_matrix(complete_graph(4)))
    assert np.allclose(ev, [-1, -1, -1, 3], atol=REPORT_TOL)
    assert np.allclose(sym_eigenvalues(np.diag([2.0, 5.0, 7.0])), [2, 5, 7], atol=REPORT_TOL)
    ev = sym_eigenvalues(adjacency_matrix(complete_graph(4).without_edge(0, 1)))
    assert abs(ev[-1] - (1 + math.sqrt(17)) / 2) <= REPORT_TOL
    with pytest.raises(NotSymmetric):
        sym_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_determinant_and_solve():
    M = RationalMatrix([[2, 1], [1, "1/2"]])
    assert determinant(M) == 0
    assert determinant(RationalMatrix([[0, 1], [1, 0]])) == -1
    assert solve(RationalMatrix([[1, 1], [1, 1]]), [1, 2]) is None
    assert solve(RationalMatrix([[2, 0], [0, 4]]), [1, 1]) == (Fraction(1, 2), Fraction(1, 4))


def test_huge_entries_rank():
    # the modular shortcut must not be fooled by multiples of its prime
    P = (1 << 61) - 1
    assert rank(RationalMatrix([[P, 0], [0, 1]])) == 2
    assert rank(RationalMatrix([[P, 2 * P], [1, 2]])) == 1
    big = 5 ** 400 + 1
    V = RationalMatrix([[1, big, big ** 2], [1, big + 1, (big + 1) ** 2], [1, big + 2, (big + 2) ** 2]])
    assert rank(V) == 3


@given(matrices(max_m=5, max_n=6))
def test_rank_matches_sympy_and_transpose(M):
    r = rank(M)
    assert r == oracles.rank(M)
    assert r == rank(M.T)


@given(matrices(max_m=4, max_n=5))
def test_subset_ranks_bounded(M):
    for s in range(1, M.n + 1):
        for S in combinations(range(M.n), s):
            assert column_rank(M, S) <= min(s, M.m)


@given(matrices(max_m=4, max_n=6))
def test_nullspace_is_exact_kernel(M):
    basis = nullspace_basis(M)
    assert len(basis) == M.n - rank(M)
    for v in basis:
        assert all(x == 0 for x in M.matvec(v))


square = st.integers(1, 4).flatmap(lambda n: matrices(max_m=n, max_n=n, min_n=n).filter(lambda M: M.m == n))


@given(square)
def test_determinant_matches_sympy(M):
    assert determinant(M) == oracles.to_sympy(M).det()


@given(matrices(max_m=4, max_n=4))
def test_ldl_round_trip(M):
    G = M.gram() + RationalMatrix.identity(M.n, 1)
    f = ldl_cholesky(G)
    assert f.reconstruct() == G
    assert all(d > 0 for d in f.D)
    for i in range(M.n):
        assert f.L[i, i] == 1
        assert all(f.L[i, j] == 0 for j in range(i + 1, M.n))


@given(matrices(max_m=4, max_n=4))
def test_definiteness_matches_sympy(M):
    G = M.gram() - RationalMatrix.identity(M.n, 1)
    eig = oracles.to_sympy(G).eigenvals()
    lam_min = min(sympy_float(e) for e in eig)
    pd = is_positive_definite(G)
    psd = is_positive_semidefinite(G)
    if lam_min > 1e-9:
        assert pd and psd
    elif lam_min < -1e-9:
        assert not pd and not psd


def sympy_float(e):
    return float(e.evalf(30).as_real_imag()[0])


@given(graphs(min_n=2, max_n=8))
def test_cholesky_bounds_on_shifted_adjacency(g):
    n = g.n
    f = ldl_cholesky(adjacency_matrix(g) + RationalMatrix.identity(n, n * n))
    assert cholesky_bounds_hold(n, f.D, f.L)


def test_printed_multiplier_interval_has_wrong_sign():
    # the interval [(2 - n^2 - 2n)/q, (2n - 2)/q] bounds -l_ij, not l_ij:
    # a single edge already gives l_21 = 1/n^2 above its upper end
    n = 5
    q = n ** 4 - 2 * n + 2
    g = complete_graph(2).with_edges([], n=n)
    f = ldl_cholesky(adjacency_matrix(g) + RationalMatrix.identity(n, n * n))
    assert f.L[1, 0] == Fraction(1, 25) > Fraction(2 * n - 2, q)
    assert cholesky_bounds_hold(n, f.D, f.L)


@given(st.integers(2, 3).flatmap(lambda n: st.lists(
    st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_jacobi_matches_characteristic_roots(rows):
    a = np.array(rows, dtype=float)
    a = a + a.T
    ours = sym_eigenvalues(a)
    lam = sympy.symbols("lam")
    poly = sympy.Matrix(a.astype(int)).charpoly(lam)
    roots = sorted(float(r) for r in sympy.real_roots(poly.as_expr()))
    assert np.allclose(ours, roots, atol=REPORT_TOL)
