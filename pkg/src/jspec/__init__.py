"""Spectral p-norm toolkit for Euclidean Jordan algebras.

Core objects: algebras assembled from simple factors (rn, spin, sym,
herm), elements with spectral decompositions and p-norms, linear maps
with a certified operator-norm estimator and closed-form norm tables,
interpolation bound checks, and an independent brute-force oracle for
the complex-splitting constant. The `jspec` CLI drives campaign suites
that emit integrity-checked JSON reports.
"""

from .algebra import Algebra, HermMatrix, RealLine, Spin, SymMatrix, parse_algebra
from .cp_oracle import (
    CpProblem,
    CpSearchResult,
    InequalityResult,
    aggregate_split_check,
    clarkson_check,
    cp_bruteforce,
    refined_clarkson_check,
)
from .elements import (
    Element,
    SpectralDecomposition,
    abs_power,
    eigenvalues,
    inner_product,
    is_invertible,
    jordan_product,
    p_norm,
    random_element,
    spectral_decomposition,
    trace,
    unit,
    zero,
)
from .errors import (
    AlgebraMismatchError,
    DegenerateInputError,
    DescriptorError,
    JspecError,
    ReportError,
    UnsupportedCaseError,
)
from .exponents import ExtExponent, conjugate, cp_constant, interpolate, vector_pnorm
from .interpolation import (
    BoundReport,
    ComplexElement,
    ComplexLinearMap,
    ExponentPair,
    ThreeLinesReport,
    check_corollary4,
    check_theorem1,
    check_theorem2,
    combine,
    complex_inner,
    complex_p_norm,
    complexify,
    theorem2_constant,
    theorem2_constant_theta,
    three_lines_demo,
)
from .linmaps import (
    ClosedForm,
    EstimatorConfig,
    LinearMap,
    NormEstimate,
    adjoint,
    closed_form_norm,
    congruence,
    identity_map,
    lyapunov,
    op_norm_estimate,
    peak,
    quadratic_rep,
    random_doubly_stochastic,
    random_map,
    reflection_mixture,
)
from .reports import CampaignConfig, SuiteReport, load_report
from .suites import cp_table_csv, replay, run_suite

__version__ = "1.0.0"

__all__ = [
    "Algebra",
    "AlgebraMismatchError",
    "BoundReport",
    "CampaignConfig",
    "ClosedForm",
    "ComplexElement",
    "ComplexLinearMap",
    "CpProblem",
    "CpSearchResult",
    "DegenerateInputError",
    "DescriptorError",
    "Element",
    "EstimatorConfig",
    "ExponentPair",
    "ExtExponent",
    "HermMatrix",
    "InequalityResult",
    "JspecError",
    "LinearMap",
    "NormEstimate",
    "RealLine",
    "ReportError",
    "SpectralDecomposition",
    "Spin",
    "SuiteReport",
    "SymMatrix",
    "ThreeLinesReport",
    "UnsupportedCaseError",
    "abs_power",
    "adjoint",
    "aggregate_split_check",
    "check_corollary4",
    "check_theorem1",
    "check_theorem2",
    "clarkson_check",
    "closed_form_norm",
    "combine",
    "complex_inner",
    "complex_p_norm",
    "complexify",
    "congruence",
    "conjugate",
    "cp_bruteforce",
    "cp_constant",
    "cp_table_csv",
    "eigenvalues",
    "identity_map",
    "inner_product",
    "interpolate",
    "is_invertible",
    "jordan_product",
    "load_report",
    "lyapunov",
    "op_norm_estimate",
    "p_norm",
    "parse_algebra",
    "peak",
    "quadratic_rep",
    "random_doubly_stochastic",
    "random_element",
    "random_map",
    "reflection_mixture",
    "replay",
    "run_suite",
    "spectral_decomposition",
    "theorem2_constant",
    "theorem2_constant_theta",
    "three_lines_demo",
    "trace",
    "unit",
    "vector_pnorm",
    "zero",
]
