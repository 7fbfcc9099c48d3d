__version__ = '0.1.0'

from .errors import (
    PyChenError, DimensionError, NotOnQuadricError, HorizontalityError, SpecError,
    ChartError, DomainError, ContractError, DegenerateSpectrumError, ConfigError,
)
from .quaternion import Quaternion, qmul, QVector, QMatrix, FormSignature, hermitian_form, trace_metric, projector
from .finite_difference import FDConfig, ORACLE_FD, LAYERED_FD, FRAME_FD, SIGMA_FD
from .spaceform import (
    SpaceFormPoint, HorizontalVector, SigmaValue, CanonicalTriple, geodesic, push_tangent, sigma,
    jq_apply, shape_operator_of_embedding, weingarten_fd, sigma_transport_defect, curvature_tensor,
)
from .family import FamilySpec, FAMILIES
from .chart import chart, Chart
from .shape import (
    ShapeFrame, shape_operator, curvature_adapted_residual, scalar_invariants, normal_jacobi,
    covariant_derivative_residual,
)
from .laplace import MatrixField, laplace_beltrami, induced_metric, iterated_laplacian, position_field
from .closed_forms import FieldExpression, ClosedForms, closed_form_fields
from .coefficients import (
    TypeCoefficients, SpecialRadius, solve_type_coefficients, condition_residuals, special_radii,
    minimal_radius_numeric,
)
from .spectral import SpectralDecomposition, spectral_decomposition, type_pde_residual, best_fit_one_type
from .checks import CheckGraph, CheckContext, run_check, CHECK_NAMES
from .config import RunConfig
from .report import Report
from .suite import run_suite
from .atlas import emit_atlas
from .units import units

__all__ = [
    # Errors
    "PyChenError", "DimensionError", "NotOnQuadricError", "HorizontalityError", "SpecError",
    "ChartError", "DomainError", "ContractError", "DegenerateSpectrumError", "ConfigError",

    # Quaternionic linear algebra
    "Quaternion", "qmul", "QVector", "QMatrix", "FormSignature", "hermitian_form", "trace_metric", "projector",

    # Space form and embedding
    "SpaceFormPoint", "HorizontalVector", "SigmaValue", "CanonicalTriple", "geodesic", "push_tangent",
    "sigma", "jq_apply", "shape_operator_of_embedding", "weingarten_fd", "sigma_transport_defect",
    "curvature_tensor",

    # Model hypersurfaces
    "FamilySpec", "FAMILIES", "chart", "Chart", "ShapeFrame", "shape_operator",
    "curvature_adapted_residual", "scalar_invariants", "normal_jacobi", "covariant_derivative_residual",

    # Laplacian oracle and closed forms
    "FDConfig", "ORACLE_FD", "LAYERED_FD", "FRAME_FD", "SIGMA_FD", "MatrixField", "laplace_beltrami",
    "induced_metric", "iterated_laplacian", "position_field", "FieldExpression", "ClosedForms",
    "closed_form_fields",

    # Chen-type engine
    "TypeCoefficients", "SpecialRadius", "solve_type_coefficients", "condition_residuals",
    "special_radii", "minimal_radius_numeric", "SpectralDecomposition", "spectral_decomposition",
    "type_pde_residual", "best_fit_one_type",

    # Verification driver
    "CheckGraph", "CheckContext", "run_check", "CHECK_NAMES", "RunConfig", "Report", "run_suite",
    "emit_atlas", "units",
]
