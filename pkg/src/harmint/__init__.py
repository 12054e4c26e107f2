"""Minimum-energy harmonic interpolation for half-space geometries."""

from .backend import BACKEND
from .complexfit import (
    ComplexPole,
    FittedComplexField,
    HermitianNormalEquations,
    LogPairField,
    PairedLogSource,
    RationalField,
    assemble_dirichlet_cx,
    assemble_log,
    assemble_sigma,
    evaluate_cx,
    field_norm_sq_cx,
    higher_pole_inner,
    solve_hermitian,
)
from .dirichlet import (
    FitResult,
    NormalEquations,
    SourceBasisSpec,
    assemble_dirichlet,
    energies,
    evaluate,
    field_norm_sq,
    node_functionals,
    solve,
)
from .downcont import (
    ContinuationReport,
    ContinuedField,
    DipoleLayout,
    FitOptions,
    PlaneError,
    SpectralModel,
    SurveyGrid,
    continue_to_plane,
    fourier_fit,
    noise_adjust,
    simulate_survey,
)
from .fields import FourierField, FourierMode, PointSourceSum
from .geometry import (
    HORIZONTAL_DIPOLE,
    MONOPOLE,
    RAW,
    SCALED,
    VERTICAL_DIPOLE,
    Constants,
    DimensionError,
    HalfSpacePoint,
    KernelKind,
    MirrorNode,
    SourcePoint,
    constants,
    eval_kernel,
    eval_kernel_derivative,
    eval_kernel_field_gradient,
    mirror,
    reflect,
    replication_constant,
)
from .oracle import (
    DivergentIntegralError,
    OracleResult,
    QuadratureSpec,
    ToleranceError,
    finite_difference,
    line_integral_inner,
    quad_complex,
    quad_dirichlet_rn,
    quad_surface_rn,
)
from .rbf import (
    EquivalenceReport,
    HalfspaceEquivalence,
    ImqSpec,
    RbfSolution,
    collocation_matrix,
    halfspace_normal_equations,
    imq_evaluate,
    imq_solve,
    to_halfspace,
    verify_equivalence,
)
from .surface import (
    SurfaceNormalEquations,
    assemble_surface_dipole,
    assemble_surface_monopole,
    field_norm_sq_surface,
    monopole_line_inner,
    solve_surface,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # geometry
    "Constants",
    "DimensionError",
    "HalfSpacePoint",
    "KernelKind",
    "MirrorNode",
    "SourcePoint",
    "MONOPOLE",
    "VERTICAL_DIPOLE",
    "HORIZONTAL_DIPOLE",
    "SCALED",
    "RAW",
    "constants",
    "eval_kernel",
    "eval_kernel_derivative",
    "eval_kernel_field_gradient",
    "mirror",
    "reflect",
    "replication_constant",
    # fields
    "PointSourceSum",
    "FourierField",
    "FourierMode",
    # dirichlet
    "SourceBasisSpec",
    "NormalEquations",
    "FitResult",
    "assemble_dirichlet",
    "node_functionals",
    "field_norm_sq",
    "solve",
    "evaluate",
    "energies",
    # surface
    "SurfaceNormalEquations",
    "assemble_surface_dipole",
    "assemble_surface_monopole",
    "monopole_line_inner",
    "field_norm_sq_surface",
    "solve_surface",
    # complex
    "ComplexPole",
    "PairedLogSource",
    "RationalField",
    "LogPairField",
    "FittedComplexField",
    "HermitianNormalEquations",
    "assemble_sigma",
    "assemble_dirichlet_cx",
    "assemble_log",
    "higher_pole_inner",
    "field_norm_sq_cx",
    "solve_hermitian",
    "evaluate_cx",
    # rbf
    "ImqSpec",
    "RbfSolution",
    "HalfspaceEquivalence",
    "EquivalenceReport",
    "collocation_matrix",
    "imq_solve",
    "imq_evaluate",
    "to_halfspace",
    "halfspace_normal_equations",
    "verify_equivalence",
    # downcont
    "SurveyGrid",
    "FitOptions",
    "SpectralModel",
    "DipoleLayout",
    "ContinuedField",
    "PlaneError",
    "ContinuationReport",
    "simulate_survey",
    "fourier_fit",
    "noise_adjust",
    "continue_to_plane",
    # oracle
    "QuadratureSpec",
    "OracleResult",
    "DivergentIntegralError",
    "ToleranceError",
    "quad_dirichlet_rn",
    "quad_surface_rn",
    "quad_complex",
    "line_integral_inner",
    "finite_difference",
]
