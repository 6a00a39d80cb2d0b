from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import matrices
from sparkkit import RationalMatrix
from sparkkit.errors import AlphaOutOfRange, OrderOutOfRange
from sparkkit.exact_linalg import nullspace_basis, rank
from sparkkit.nsp import k1_norm, nsc, nsp_certify, nsp_nontrivial_decide, resolve_jobs
from sparkkit.recovery import l1_norm
from sparkkit.spark import has_circuit_at_most


def test_example1_constants(example1):
    r1 = nsc(example1, 1)
    assert r1.alpha == Fraction(1, 2)
    assert r1.witness_support == (0,)
    assert r1.witness_vector == (Fraction(1, 2), Fraction(-1, 2), 0, 0)
    r2 = nsc(example1, 2)
    assert r2.alpha == 1 and r2.witness_support == (0, 1)


def test_identity_has_zero_constant():
    for k in (1, 2, 3):
        rep = nsc(RationalMatrix.identity(3), k)
        assert rep.alpha == 0 and rep.witness_vector is None
    assert nsp_certify(RationalMatrix.identity(3), 1, 0)
    assert all(nsp_nontrivial_decide(RationalMatrix.identity(3), k) for k in (1, 2, 3))


def test_one_dimensional_kernel_value():
    A = RationalMatrix([[1, 0, "1/3"], [0, 1, "1/3"]])
    rep = nsc(A, 1)
    assert rep.alpha == Fraction(3, 5)
    assert rep.witness_support == (2,)


def test_certify_examples(example1):
    assert nsp_certify(example1, 1, "1/2")
    assert not nsp_certify(example1, 1, "49/100")
    assert not nsp_certify(example1, 2, 0.99)
    for bad in (-1, "3/2"):
        with pytest.raises(AlphaOutOfRange):
            nsp_certify(example1, 1, bad)


def test_nontrivial_examples(example1):
    assert nsp_nontrivial_decide(example1, 1) is True
    assert nsp_nontrivial_decide(example1, 2) is False
    with pytest.raises(OrderOutOfRange):
        nsp_nontrivial_decide(example1, 5)
    with pytest.raises(OrderOutOfRange):
        nsc(example1, 0)


def test_jobs_resolution(monkeypatch):
    monkeypatch.setenv("SPARKKIT_JOBS", "3")
    assert resolve_jobs() == 3
    assert resolve_jobs(0) == 1
    monkeypatch.delenv("SPARKKIT_JOBS")
    assert resolve_jobs() == 1


def test_parallel_scan_matches_serial():
    A = RationalMatrix([[1, 2, 0, 1, -1, 3, 0], [0, 1, 1, -2, 1, 1, 2], [1, 0, 3, 1, 0, -1, 1]])
    for k in (2, 3):
        serial = nsc(A, k, jobs=1)
        parallel = nsc(A, k, jobs=2)
        assert serial == parallel


def _check_witness(A, rep):
    x = rep.witness_vector
    assert all(v == 0 for v in A.matvec(x))
    assert l1_norm(x) == 1
    assert sum((abs(x[i]) for i in rep.witness_support), Fraction(0)) == rep.alpha
    assert k1_norm(x, rep.k) == rep.alpha


@given(matrices(max_m=3, max_n=5))
def test_constant_matches_circuit_vertices(A):
    prev = Fraction(0)
    for k in range(1, A.n + 1):
        rep = nsc(A, k)
        assert rep.alpha == oracles.nsc(A, k)
        assert 0 <= rep.alpha <= 1
        assert prev <= rep.alpha
        prev = rep.alpha
        assert (rep.alpha == 1) == has_circuit_at_most(A, k)[0]
        if rep.witness_vector is not None:
            _check_witness(A, rep)
    if rank(A) < A.n:
        assert prev == 1


@given(matrices(max_m=3, max_n=5), st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_inequality_holds_on_random_kernel_vectors(A, coeffs):
    basis = nullspace_basis(A)
    if not basis:
        return
    x = [sum((c * v[j] for c, v in zip(coeffs, basis)), Fraction(0)) for j in range(A.n)]
    if not any(x):
        return
    for k in range(1, A.n + 1):
        assert k1_norm(x, k) <= nsc(A, k).alpha * l1_norm(x)


@given(matrices(max_m=3, max_n=5))
def test_single_generator_kernels(A):
    basis = nullspace_basis(A)
    if len(basis) != 1:
        return
    (v,) = basis
    for k in range(1, A.n + 1):
        assert nsc(A, k).alpha == k1_norm(v, k) / l1_norm(v)


@given(matrices(max_m=3, max_n=5))
def test_nontrivial_decision_cross_checks(A):
    for k in range(1, A.n + 1):
        assert nsp_nontrivial_decide(A, k) == (not has_circuit_at_most(A, k)[0])
