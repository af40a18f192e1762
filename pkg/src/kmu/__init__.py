"""Exact-arithmetic models of non-Sasakian (kappa,mu)-spaces.

Builds the Lie-group model family on rational parameters, derives its
connection, curvature and contact tensors exactly, and certifies the
structural identities, deformation behavior and Legendrian submanifold
classifications as zero-residual assertions.
"""

from .connection import (
    ConnectionTable,
    CurvatureTable,
    covariant_derivative_11,
    levi_civita,
    riemann,
    sectional_curvature,
)
from .contact import (
    ContactStructure,
    ModelInvariants,
    attach_h,
    build_contact_structure,
    closed_form_curvature,
    compute_h,
    extract_kappa_mu,
    nijenhuis,
    verify_identities,
)
from .deformation import d_homothetic, predicted_invariants
from .errors import KmuError
from .liealg import LieAlgebraModel, bracket, build_boeckx_model, check_jacobi
from .linalg import Mat, Vec, inner, rat, rat_str, solve_diagonal_metric
from .pipeline import StructureAnalysis, analyze_structure
from .submanifold import (
    DistributionSpec,
    SubmanifoldGeometry,
    analyze_submanifold,
    build_distribution,
    check_involutive,
    second_fundamental_form,
    split_h,
    theta_parametrization,
)

__version__ = "0.1.0"

__all__ = [
    "ConnectionTable",
    "ContactStructure",
    "CurvatureTable",
    "DistributionSpec",
    "KmuError",
    "LieAlgebraModel",
    "Mat",
    "ModelInvariants",
    "StructureAnalysis",
    "SubmanifoldGeometry",
    "Vec",
    "analyze_structure",
    "analyze_submanifold",
    "attach_h",
    "bracket",
    "build_boeckx_model",
    "build_contact_structure",
    "build_distribution",
    "check_involutive",
    "check_jacobi",
    "closed_form_curvature",
    "compute_h",
    "covariant_derivative_11",
    "d_homothetic",
    "extract_kappa_mu",
    "inner",
    "levi_civita",
    "nijenhuis",
    "predicted_invariants",
    "rat",
    "rat_str",
    "riemann",
    "second_fundamental_form",
    "sectional_curvature",
    "solve_diagonal_metric",
    "split_h",
    "theta_parametrization",
    "verify_identities",
]
