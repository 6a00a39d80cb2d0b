"""Clique instances turned into spark, upper-RIC and sparse-PCA instances.

Each generator is deterministic (vertices by label, edges lexicographic) and
emits an exact matrix together with the threshold that the clique question
maps to. ``verify_reduction`` solves both sides by brute force and reports
whether they agree.

Spark
    Stack the vertex-edge incidence matrix on top of ``C(k,2) - k - 1``
    rows of powers ``(U + i - 1)^(e - 1)``, one column per edge, with
    ``U = k^(2 k^2 m) + 1``. The graph has a k-clique iff the matrix has a
    circuit of size ``C(k,2)``, and no circuit is smaller.

Upper RIC
    ``H = A_G + n^2 I`` is positive definite; with ``H = L D L^T`` the
    square roots of ``D`` are truncated to ``p`` decimals and
    ``A = diag(r) L^T``. Then ``A^T A`` is within ``O(10^-p n^3)`` of ``H``
    and the k-clique question becomes ``delta_k^U(A) >= delta``.

Sparse PCA
    The adjacency matrix itself, with threshold ``k - 1``.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
import json
import math
import os

from .errors import FormatError, KTooSmall, OrderOutOfRange, TooLarge
from .exact_linalg import RationalMatrix, column_rank, ldl_cholesky
from .formats import decimal_str, number_str, read_matrix, write_matrix
from .graphs import Graph, adjacency_matrix, has_clique, incidence_matrix
from .rip import ric, sparse_pca_max
from .spark import spark

FORMAT_VERSION = 1
MATRIX_FILE = "matrix.mat"
SIDECAR_FILE = "instance.json"

# brute-force limits for verify_reduction
MAX_VERTICES = 12
MAX_EDGES = 16
MAX_K = 6

BOUND_TOL = 1e-6
PCA_TOL = 1e-9
VANDERMONDE_CHECK_LIMIT = 5000


@dataclass(frozen=True)
class SparkReductionInstance:
    matrix: RationalMatrix
    k_circuit: int
    U: int
    graph: Graph
    k: int
    kind: str = field(default="spark", init=False)

    def thresholds(self):
        return {"U": str(self.U), "k_circuit": str(self.k_circuit)}


@dataclass(frozen=True)
class RicReductionInstance:
    matrix: RationalMatrix
    delta: Fraction
    p: int
    k: int
    graph: Graph
    L: RationalMatrix
    D: tuple
    r: tuple
    kind: str = field(default="ric", init=False)

    def thresholds(self):
        return {"p": str(self.p), "delta": decimal_str(self.delta)}


@dataclass(frozen=True)
class PcaReductionInstance:
    matrix: RationalMatrix
    lam: int
    k: int
    graph: Graph
    kind: str = field(default="pca", init=False)

    def thresholds(self):
        return {"lambda": str(self.lam)}


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    agree: bool
    answer: str
    source_answer: bool
    target_answer: bool
    target_value: object
    threshold: object
    margin: float
    clique_witness: tuple
    target_witness: tuple
    checks: dict

    @property
    def ok(self):
        return self.agree and all(v is not False for v in self.checks.values())


def _answer(flag):
    return "clique" if flag else "no clique"


def clique_to_spark(g, k):
    if k <= 4:
        raise KTooSmall(f"the spark construction needs k > 4, got {k}")
    m = g.m
    U = k ** (2 * k * k * m) + 1
    bottom = math.comb(k, 2) - k - 1
    rows = [list(r) for r in incidence_matrix(g).rows] if g.n else []
    for i in range(1, bottom + 1):
        base = U + i - 1
        rows.append([base ** e for e in range(m)])
    return SparkReductionInstance(RationalMatrix(rows, n=m), math.comb(k, 2), U, g, k)


def ric_precision(n):
    """``1 + ceil(4 log10 n)``, computed on integers."""
    c = 0
    while 10 ** c < n ** 4:
        c += 1
    return 1 + c


def truncated_sqrt(d, p):
    """``floor(10^p sqrt(d)) / 10^p`` for a rational ``d >= 0``, exactly."""
    scale = 10 ** p
    return Fraction(math.isqrt(scale * scale * d.numerator // d.denominator), scale)


def clique_to_ric(g, k):
    n = g.n
    if n < 2:
        raise OrderOutOfRange(f"the RIC construction needs n >= 2, got {n}")
    if not 2 <= k <= n:
        raise OrderOutOfRange(f"k = {k} outside 2..{n}")
    H = adjacency_matrix(g) + RationalMatrix.identity(n, n * n)
    f = ldl_cholesky(H)
    p = ric_precision(n)
    r = tuple(truncated_sqrt(d, p) for d in f.D)
    Lt = f.L.T.rows
    A = RationalMatrix([[r[i] * v for v in Lt[i]] for i in range(n)])
    delta = Fraction(n * n + k - 2) - Fraction(2 * n ** 3, 10 ** p)
    return RicReductionInstance(A, delta, p, k, g, f.L, f.D, r)


def clique_to_pca(g, k):
    n = g.n
    if n < 2:
        raise OrderOutOfRange(f"the PCA construction needs n >= 2, got {n}")
    if not 1 <= k <= n:
        raise OrderOutOfRange(f"k = {k} outside 1..{n}")
    return PcaReductionInstance(adjacency_matrix(g), k - 1, k, g)


def _build(kind, g, k):
    return {"spark": clique_to_spark, "ric": clique_to_ric, "pca": clique_to_pca}[kind](g, k)


def _source(g, k):
    if k > g.n:
        return False, None
    return has_clique(g, k)


def _guard(inst):
    g = inst.graph
    if g.n > MAX_VERTICES or g.m > MAX_EDGES or inst.k > MAX_K:
        raise TooLarge(
            f"brute-force verification limited to n <= {MAX_VERTICES}, m <= {MAX_EDGES}, "
            f"k <= {MAX_K}; got n = {g.n}, m = {g.m}, k = {inst.k}"
        )


def cholesky_entry_bounds(n):
    """``(d_lo, d_hi, l_lo, l_hi)`` for the LDL factors of ``A_G + n^2 I``.

    Off the diagonal, ``L`` holds the elimination multipliers
    ``h_ij / d_j`` themselves (not their negatives), so the interval for
    ``l_ij`` is the reflection of the one for ``-h_ij / d_j``.
    """
    q = n ** 4 - 2 * n + 2
    return Fraction(q, n * n), Fraction(n * n), Fraction(2 - 2 * n, q), Fraction(n * n + 2 * n - 2, q)


def cholesky_bounds_hold(n, D, L):
    d_lo, d_hi, l_lo, l_hi = cholesky_entry_bounds(n)
    if any(not d_lo <= d <= d_hi for d in D):
        return False
    return all(l_lo <= L[i, j] <= l_hi for i in range(n) for j in range(n) if i != j)


def vandermonde_minors_nonsingular(inst, limit=None):
    """Every square block of the power rows is nonsingular; ``None`` if over ``limit`` blocks."""
    rows = inst.matrix.rows[inst.graph.n:]
    b = len(rows)
    m = inst.matrix.n
    if b == 0 or m < b:
        return True
    if limit is not None and math.comb(m, b) > limit:
        return None
    block = RationalMatrix(rows, n=m)
    return all(column_rank(block, S) == b for S in combinations(range(m), b))


def encoding_within_factor(inst, factor=4):
    """Largest entry bit length against ``k^2 m^2 log2 k``; ``None`` when ``m < 2``."""
    m, k = inst.graph.m, inst.k
    if m < 2:
        return None
    bits = max(abs(v).numerator.bit_length() for row in inst.matrix.rows for v in row)
    scale = k * k * m * m * math.log2(k)
    return scale / factor <= bits <= factor * scale


def _verify_spark(inst, found, clique):
    c = inst.k_circuit
    sv = spark(inst.matrix)
    target = sv.value == c
    checks = {
        "no_smaller_circuit": sv.value is None or sv.value >= c,
        "top_block_is_incidence": (
            RationalMatrix(inst.matrix.rows[:inst.graph.n], n=inst.matrix.n) == incidence_matrix(inst.graph)
            if inst.graph.n else True
        ),
        "vandermonde_minors": vandermonde_minors_nonsingular(inst, VANDERMONDE_CHECK_LIMIT),
        "encoding_length": encoding_within_factor(inst),
    }
    witness = None
    if target:
        witness = sv.witness.support
        verts = {v for j in witness for v in inst.graph.edges[j]}
        checks["witness_edges_form_clique"] = len(verts) == inst.k
    return target, sv.value, c, None, witness, checks


def _verify_ric(inst, found, clique):
    g, k = inst.graph, inst.k
    n = g.n
    rep = ric(inst.matrix, k)
    value = rep.delta_upper
    delta = float(inst.delta)
    target = value >= delta
    slack = 2 * n ** 3 / 10 ** inst.p
    if found:
        bound = n * n + k - 2 - slack
        within = value >= bound - BOUND_TOL
    else:
        bound = n * n + (k - 3 + math.sqrt(k * k + 2 * k - 7)) / 2 + slack - 1
        within = value <= bound + BOUND_TOL
    step = Fraction(1, 10 ** inst.p)
    checks = {
        "truncation_exact": all(r * r <= d < (r + step) ** 2 for r, d in zip(inst.r, inst.D)),
        "cholesky_bounds": cholesky_bounds_hold(n, inst.D, inst.L),
        "first_root_is_n": inst.r[0] == n,
        "spectral_bound": within,
    }
    return target, value, delta, abs(value - delta), rep.witness_upper, checks


def _verify_pca(inst, found, clique):
    value, witness = sparse_pca_max(inst.matrix, inst.k)
    target = value >= inst.lam - PCA_TOL
    checks = {"never_above_lambda": value <= inst.lam + PCA_TOL}
    if target:
        checks["witness_is_clique"] = has_clique(
            Graph(len(witness), [(a, b) for a, b in combinations(range(len(witness)), 2)
                                 if inst.graph.has_edge(witness[a], witness[b])]),
            inst.k,
        )[0]
    return target, value, inst.lam, abs(value - inst.lam), witness, checks


def verify_reduction(inst):
    """Solve the clique side and the matrix side by brute force and compare."""
    _guard(inst)
    found, clique = _source(inst.graph, inst.k)
    check = {"spark": _verify_spark, "ric": _verify_ric, "pca": _verify_pca}[inst.kind]
    target, value, threshold, margin, witness, checks = check(inst, found, clique)
    checks["matrix_matches_construction"] = _build(inst.kind, inst.graph, inst.k).matrix == inst.matrix
    return VerificationReport(
        inst.kind, found == target, _answer(found), found, target, value, threshold,
        margin, clique, witness, checks,
    )


def save_instance(inst, directory):
    """Write ``matrix.mat`` and the ``instance.json`` sidecar; returns the sidecar dict."""
    os.makedirs(directory, exist_ok=True)
    write_matrix(inst.matrix, os.path.join(directory, MATRIX_FILE))
    found, clique = _source(inst.graph, inst.k)
    meta = {
        "format_version": FORMAT_VERSION,
        "kind": inst.kind,
        "graph": {"n": inst.graph.n, "edges": [list(e) for e in inst.graph.edges]},
        "k": inst.k,
        "thresholds": inst.thresholds(),
        "intended_answer": _answer(found),
        "certificate": list(clique) if clique else None,
        "matrix_file": MATRIX_FILE,
        "shape": list(inst.matrix.shape),
    }
    with open(os.path.join(directory, SIDECAR_FILE), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return meta


def load_instance(directory):
    """Read an instance directory back.

    Derived data (LDL factors, ``U``) is rebuilt from the graph; the matrix
    is the one on disk, so tampering shows up in ``verify_reduction``.
    """
    path = os.path.join(directory, SIDECAR_FILE)
    try:
        with open(path, encoding="utf-8") as fh:
            meta = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno, path) from None
    try:
        kind = meta["kind"]
        g = Graph(meta["graph"]["n"], [tuple(e) for e in meta["graph"]["edges"]])
        k = int(meta["k"])
        mfile = meta.get("matrix_file", MATRIX_FILE)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad instance sidecar: {exc}", source=path) from None
    if kind not in ("spark", "ric", "pca"):
        raise FormatError(f"unknown reduction kind {kind!r}", source=path)
    matrix = read_matrix(os.path.join(directory, mfile))
    inst = replace(_build(kind, g, k), matrix=matrix)
    stored = meta.get("thresholds", {})
    if stored and stored != inst.thresholds():
        raise FormatError(f"thresholds {stored} do not match the construction", source=path)
    return inst


def describe(inst):
    """Thresholds and shape as JSON-ready strings."""
    return {
        "kind": inst.kind,
        "k": inst.k,
        "shape": list(inst.matrix.shape),
        "thresholds": {key: number_str(Fraction(v)) for key, v in inst.thresholds().items()},
    }
