from fractions import Fraction
import json
import math
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from sparkkit import RationalMatrix
from sparkkit.errors import FormatError, KTooSmall, OrderOutOfRange, TooLarge
from sparkkit.formats import read_matrix, write_matrix
from sparkkit.graphs import Graph, complete_graph, empty_graph, incidence_matrix, path_graph, random_graph
from sparkkit.reductions import (
    MATRIX_FILE,
    SIDECAR_FILE,
    clique_to_pca,
    clique_to_ric,
    clique_to_spark,
    describe,
    encoding_within_factor,
    load_instance,
    ric_precision,
    save_instance,
    truncated_sqrt,
    verify_reduction,
)
from sparkkit.rip import sparse_pca_max
from sparkkit.spark import enumerate_circuits


def k5_minus_edge_with_pendant():
    g = complete_graph(5).without_edge(0, 1)
    return g.with_edges([(4, 5)], n=6)


def test_spark_instance_k5():
    inst = clique_to_spark(complete_graph(5), 5)
    assert inst.matrix.shape == (9, 10)
    assert inst.U == 5 ** 500 + 1 and inst.k_circuit == 10
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok and rep.answer == "clique"
    assert rep.target_value == 10
    assert rep.target_witness == tuple(range(10))
    assert rep.clique_witness == (0, 1, 2, 3, 4)


def test_spark_instance_no_clique():
    g = k5_minus_edge_with_pendant()
    assert (g.n, g.m) == (6, 10)
    inst = clique_to_spark(g, 5)
    assert inst.matrix.shape == (10, 10)
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok and rep.answer == "no clique"
    assert rep.target_value is None


def test_spark_instance_layout():
    g = path_graph(4)
    inst = clique_to_spark(g, 5)
    n, m = g.n, g.m
    rows = inst.matrix.rows
    assert RationalMatrix(rows[:n], n=m) == incidence_matrix(g)
    assert len(rows) == n + math.comb(5, 2) - 5 - 1
    for i, row in enumerate(rows[n:], start=1):
        assert list(row) == [(inst.U + i - 1) ** e for e in range(m)]
    assert inst.U == 5 ** (2 * 25 * m) + 1


def test_spark_rejects_small_k():
    for k in (1, 2, 3, 4):
        with pytest.raises(KTooSmall):
            clique_to_spark(complete_graph(5), k)


def test_spark_emits_trivial_no_instance():
    inst = clique_to_spark(path_graph(3), 5)
    assert inst.matrix.n == 2
    rep = verify_reduction(inst)
    assert rep.agree and rep.answer == "no clique"


def test_ric_precision_values():
    assert [ric_precision(n) for n in (2, 3, 5, 10, 12)] == [3, 3, 4, 5, 6]
    for n in range(2, 40):
        assert ric_precision(n) == 1 + math.ceil(4 * math.log10(n) - 1e-12)


def test_truncated_sqrt_is_exact():
    assert truncated_sqrt(Fraction(2), 3) == Fraction(1414, 1000)
    assert truncated_sqrt(Fraction(25), 4) == 5
    d = Fraction(10 ** 40 + 7, 3)
    r = truncated_sqrt(d, 6)
    assert r * r <= d < (r + Fraction(1, 10 ** 6)) ** 2


def test_ric_instance_k5():
    inst = clique_to_ric(complete_graph(5), 5)
    assert inst.p == 4 and inst.delta == Fraction(27975, 1000)
    assert inst.r[0] == 5
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok and rep.answer == "clique"
    assert rep.target_value >= float(inst.delta)


def test_ric_instance_k5_minus_edge():
    inst = clique_to_ric(complete_graph(5).without_edge(0, 1), 5)
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok and rep.answer == "no clique"
    assert rep.margin >= 0.3


def test_ric_instance_single_edge():
    inst = clique_to_ric(complete_graph(2), 2)
    assert inst.p == 3
    rep = verify_reduction(inst)
    assert rep.agree and rep.answer == "clique"


def test_ric_preconditions():
    with pytest.raises(OrderOutOfRange):
        clique_to_ric(empty_graph(1), 1)
    with pytest.raises(OrderOutOfRange):
        clique_to_ric(complete_graph(3), 4)
    with pytest.raises(OrderOutOfRange):
        clique_to_ric(complete_graph(3), 1)


def test_pca_instances():
    g = complete_graph(3).disjoint_union(empty_graph(1))
    inst = clique_to_pca(g, 3)
    assert inst.lam == 2
    assert abs(sparse_pca_max(inst.matrix, 3)[0] - 2) <= 1e-9
    assert verify_reduction(inst).answer == "clique"
    value, _ = sparse_pca_max(clique_to_pca(path_graph(4), 3).matrix, 3)
    assert abs(value - math.sqrt(2)) <= 1e-9
    rep = verify_reduction(clique_to_pca(empty_graph(4), 2))
    assert rep.agree and rep.answer == "no clique" and rep.target_value == 0
    with pytest.raises(OrderOutOfRange):
        clique_to_pca(empty_graph(1), 1)


def test_guard():
    with pytest.raises(TooLarge):
        verify_reduction(clique_to_pca(empty_graph(13), 2))
    with pytest.raises(TooLarge):
        verify_reduction(clique_to_pca(complete_graph(7), 3))
    with pytest.raises(TooLarge):
        verify_reduction(clique_to_spark(path_graph(8), 7))


def test_encoding_length():
    assert encoding_within_factor(clique_to_spark(complete_graph(5), 5))
    assert encoding_within_factor(clique_to_spark(k5_minus_edge_with_pendant(), 5))
    assert encoding_within_factor(clique_to_spark(path_graph(2), 5)) is None


@pytest.mark.parametrize("kind", ["spark", "ric", "pca"])
def test_save_load_round_trip(tmp_path, kind):
    g = complete_graph(5)
    build = {"spark": clique_to_spark, "ric": clique_to_ric, "pca": clique_to_pca}[kind]
    inst = build(g, 5)
    meta = save_instance(inst, tmp_path)
    assert meta["intended_answer"] == "clique" and meta["certificate"] == [0, 1, 2, 3, 4]
    back = load_instance(tmp_path)
    assert back.matrix == inst.matrix and back.kind == kind
    assert back.thresholds() == inst.thresholds()
    assert read_matrix(tmp_path / MATRIX_FILE) == inst.matrix
    assert verify_reduction(back).agree


def test_ric_thresholds_are_exact_decimals(tmp_path):
    meta = save_instance(clique_to_ric(complete_graph(5), 5), tmp_path)
    assert meta["thresholds"] == {"delta": "27.975", "p": "4"}
    assert describe(load_instance(tmp_path))["thresholds"]["delta"] == "27.975"


def test_tampered_matrix_is_detected(tmp_path):
    inst = clique_to_pca(complete_graph(4), 4)
    save_instance(inst, tmp_path)
    M = [list(r) for r in inst.matrix.rows]
    M[0][1] = M[1][0] = 0
    write_matrix(RationalMatrix(M), tmp_path / MATRIX_FILE)
    rep = verify_reduction(load_instance(tmp_path))
    assert rep.checks["matrix_matches_construction"] is False
    assert not rep.ok


def test_bad_sidecars(tmp_path):
    save_instance(clique_to_pca(complete_graph(3), 2), tmp_path)
    side = tmp_path / SIDECAR_FILE
    meta = json.loads(side.read_text())
    meta["thresholds"] = {"lambda": "5"}
    side.write_text(json.dumps(meta))
    with pytest.raises(FormatError):
        load_instance(tmp_path)
    meta["kind"] = "subset-sum"
    side.write_text(json.dumps(meta))
    with pytest.raises(FormatError):
        load_instance(tmp_path)
    side.write_text("{not json")
    with pytest.raises(FormatError):
        load_instance(tmp_path)
    os.remove(side)
    with pytest.raises(OSError):
        load_instance(tmp_path)


@settings(max_examples=10)
@given(st.integers(5, 7), st.floats(0.55, 0.95), st.integers(0, 10 ** 6))
def test_spark_instances_agree(n, p, seed):
    g = random_graph(n, p, seed)
    if g.m > 11:
        g = Graph(n, g.edges[:11])
    inst = clique_to_spark(g, 5)
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok
    # beyond C(k,2) columns larger circuits are unavoidable; none may be smaller
    sizes = {len(c) for c in enumerate_circuits(inst.matrix)}
    assert all(s >= inst.k_circuit for s in sizes)
    assert (inst.k_circuit in sizes) == rep.source_answer


@given(graphs(min_n=2, max_n=6), st.integers(2, 6))
def test_ric_instances_agree(g, k):
    if k > g.n:
        return
    inst = clique_to_ric(g, k)
    rep = verify_reduction(inst)
    assert rep.agree and rep.ok, rep.checks


@given(graphs(min_n=2, max_n=8), st.integers(1, 6))
def test_pca_instances_agree(g, k):
    if k > g.n or g.m > 16:
        return
    rep = verify_reduction(clique_to_pca(g, k))
    assert rep.agree and rep.ok
    assert rep.target_value <= k - 1 + 1e-9
