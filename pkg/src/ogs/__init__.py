"""Spectra of superpower (order super) graphs of finite groups."""

from .claims import (
    CLAIM_IDS,
    cor32_quartic,
    cor33_laplacian,
    cor34_signless,
    thm31_prediction,
    thm41_cubic,
    thm41_prediction,
)
from .errors import (
    BadK,
    BadParams,
    CapExceeded,
    DomainError,
    ExprSyntaxError,
    NotOddPrime,
    NotSymmetric,
    OGSError,
    UnknownClaim,
)
from .groups import (
    Cyclic,
    Dihedral,
    Product,
    enumerate_element_orders,
    euler_phi,
    group_order,
    order_profile,
)
from .parser import format_group_expr, parse_group_expr
from .spectra import (
    ADJACENCY,
    LAPLACIAN,
    SIGNLESS,
    MatrixKind,
    RationalMatrix,
    RationalPoly,
    Spectrum,
    build_matrix,
    charpoly_exact,
    dense_spectrum,
    group_eigenvalues,
    quotient_matrix,
    structural_spectrum,
)
from .supergraph import class_graph, expand_dense, graph_stats
from .verifier import CheckSpec, Report, check_paper_claim, cross_check, run_suite

__version__ = "0.1.0"
