"""Exact spark, restricted isometry and nullspace constants at desk scale,
plus clique reductions that produce verified hard instances."""

from ._kernels import backend
from .errors import *  # noqa: F401,F403
from .exact_linalg import (
    LdlFactorization,
    RationalMatrix,
    as_rational,
    determinant,
    is_positive_definite,
    is_positive_semidefinite,
    ldl_cholesky,
    nullspace_basis,
    rank,
    sym_eigenvalues,
)
from .graphs import Graph, adjacency_matrix, has_clique, incidence_matrix, parse_graph
from .lp_exact import LinearProgram, LpResult, LpStatus, SimplexWorkspace, solve_lp
from .nsp import NscReport, nsc, nsp_certify, nsp_nontrivial_decide
from .recovery import (
    check_l0_l1_equivalence,
    coherence,
    coherence_bound_holds,
    coherence_spark_bound,
    mutual_coherence,
    solve_p0,
    solve_p1,
)
from .reductions import (
    clique_to_pca,
    clique_to_ric,
    clique_to_spark,
    load_instance,
    save_instance,
    verify_reduction,
)
from .rip import RipReport, ric, rip_certify, rip_scale, sparse_pca_decide, sparse_pca_max, spectral_floor
from .spark import (
    NO_CIRCUIT,
    Circuit,
    SparkValue,
    enumerate_circuits,
    full_spark_violation,
    has_circuit_at_most,
    has_nullspace_vector_of_support,
    is_circuit,
    is_full_spark,
    min_circuit_through_column,
    spark,
    spark_via_p0,
)

__version__ = "0.1.0"
