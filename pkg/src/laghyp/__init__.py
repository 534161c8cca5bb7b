"""Numerical harmonic analysis on the radial half-plane with Laguerre characters.

The package bundles: stable Laguerre/Bessel special functions, Gaussian
quadrature rules and the measured grids built from them, the forward and
inverse Laguerre-Fourier transforms plus a radial Fourier-Bessel transform,
the hypergroup translation/convolution pair, the heat kernel of the radial
sub-Laplacian with its calibration helpers, and an uncertainty-certificate
engine that tests whether a function with joint space/frequency Gaussian
decay must vanish. A small CLI (`laghyp`) runs the verification suites and
writes CSV/JSON reports.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    GridRangeError,
    LaghypError,
    PositivityError,
    StripViolationError,
    TruncationError,
)
from .grids import (
    SCHEMA_VERSION,
    GridFunction,
    RadialGrid,
    SpectralFunction,
    SpectralGrid,
    TimeGrid,
    integrate_grid,
    integrate_radial,
    integrate_spectral,
    load_grid_function,
    load_spectral_function,
    mass,
    radial_grid,
    radial_grid_uniform,
    save_grid_function,
    save_spectral_function,
    spectral_grid,
    spectral_grid_uniform,
)
from .heat import (
    GaussianFit,
    HeatCalibration,
    HeatParams,
    calibrate_heat,
    fit_gaussian_estimate,
    heat_apply,
    heat_kernel_eval,
    heat_kernel_grid,
    heat_lambda_rule,
)
from .hypergroup import (
    PointK,
    TranslationRule,
    apply_radial_laplacian,
    convolve,
    hypergroup_character,
    norm_lp,
    translate,
    translation_rule,
)
from .miyachi import (
    BoundCheckResult,
    CertificateReport,
    MiyachiParams,
    hankel_strip_bound_check,
    log_plus,
    logplus_integral,
    miyachi_certificate,
    pivot_variation,
    slice_decay_check,
)
from .quadrature import (
    QuadratureRule,
    composite_legendre,
    exact_sum,
    gauss_generalized_laguerre,
    gauss_jacobi,
    gauss_legendre,
    map_rule,
    trapezoid_rule,
)
from .special import (
    bessel_j,
    bessel_j_integral,
    bessel_kernel,
    bessel_kernel_integral,
    bessel_kernel_series,
    laguerre_function,
    laguerre_polynomial,
    damped_laguerre_sequence,
    laguerre_sequence,
    log_gamma,
    normalized_laguerre_sequence,
    oscillator_norm_constant,
    oscillator_profile,
)
from .suites import (
    SUITE_NAMES,
    CheckResult,
    SuiteConfig,
    collect_suite,
    make_fixture_function,
    run_suite,
    write_report,
)
from .cli import make_fixture
from .transforms import (
    RadialSlice,
    character_profiles,
    fourier_laguerre_forward,
    fourier_laguerre_inverse,
    hankel_transform,
    norm_squared_grid,
    norm_squared_spectral,
    plancherel_gap,
    plancherel_norms,
    time_slice_transform,
)

__version__ = "1.0.0"

__all__ = [
    "BoundCheckResult",
    "CertificateReport",
    "CheckResult",
    "ConfigError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "GaussianFit",
    "GridFunction",
    "GridRangeError",
    "HeatCalibration",
    "HeatParams",
    "LaghypError",
    "MiyachiParams",
    "PointK",
    "PositivityError",
    "QuadratureRule",
    "RadialGrid",
    "RadialSlice",
    "SCHEMA_VERSION",
    "SUITE_NAMES",
    "SpectralFunction",
    "SpectralGrid",
    "StripViolationError",
    "SuiteConfig",
    "TimeGrid",
    "TranslationRule",
    "TruncationError",
    "__version__",
    "apply_radial_laplacian",
    "bessel_j",
    "bessel_j_integral",
    "bessel_kernel",
    "bessel_kernel_integral",
    "bessel_kernel_series",
    "calibrate_heat",
    "character_profiles",
    "collect_suite",
    "composite_legendre",
    "convolve",
    "damped_laguerre_sequence",
    "exact_sum",
    "fit_gaussian_estimate",
    "fourier_laguerre_forward",
    "fourier_laguerre_inverse",
    "gauss_generalized_laguerre",
    "gauss_jacobi",
    "gauss_legendre",
    "hankel_strip_bound_check",
    "hankel_transform",
    "heat_apply",
    "heat_kernel_eval",
    "heat_kernel_grid",
    "heat_lambda_rule",
    "hypergroup_character",
    "integrate_grid",
    "integrate_radial",
    "integrate_spectral",
    "laguerre_function",
    "laguerre_polynomial",
    "laguerre_sequence",
    "load_grid_function",
    "load_spectral_function",
    "log_gamma",
    "log_plus",
    "logplus_integral",
    "make_fixture",
    "make_fixture_function",
    "map_rule",
    "mass",
    "miyachi_certificate",
    "norm_lp",
    "norm_squared_grid",
    "norm_squared_spectral",
    "normalized_laguerre_sequence",
    "oscillator_norm_constant",
    "oscillator_profile",
    "pivot_variation",
    "plancherel_gap",
    "plancherel_norms",
    "radial_grid",
    "radial_grid_uniform",
    "run_suite",
    "save_grid_function",
    "save_spectral_function",
    "slice_decay_check",
    "spectral_grid",
    "spectral_grid_uniform",
    "time_slice_transform",
    "translate",
    "translation_rule",
    "trapezoid_rule",
    "write_report",
]
