"""Exact decision procedure and constant engine for maximal control of even
higher-order Riesz transforms (Calderon-Zygmund operators with polynomial
kernels).

The main entry point is :func:`check_condition_iv`, which takes an
:class:`OperatorSpec` and returns a verdict: ``Controlled``,
``NotControlled`` (with the reason) or ``Undecided``.
"""

from .constants import (
    A2pFunctional,
    C2j,
    FundamentalConstants,
    RadialPolynomial,
    a2p_functional,
    a_coefficients,
    b_polynomial,
    bessel_series_coeff,
    c_ljk,
    fundamental_constants,
    s_polynomial,
)
from .criterion import (
    SCHEMA,
    Controlled,
    DivisibilityFailure,
    MultiplierForm,
    NotControlled,
    OperatorSpec,
    Undecided,
    ZeroOnSphere,
    assemble_multiplier,
    check_condition_iv,
    gamma_ratio,
)
from .errors import (
    CancellationViolation,
    CriterionError,
    DegreeMismatch,
    DimensionMismatch,
    DivisionByZero,
    IndexOutOfRange,
    InternalMismatch,
    OddComponent,
    QuadratureUnderResolved,
    SingularSystem,
    ZeroDivisor,
    ZeroPolynomial,
)
from .harmonic import HarmonicExpansion, decompose, xy_family_generate, expansion_from_numerator, harmonic_projection
from .identities import IdentityReport, run_suite
from .poly import HPoly, apply_diff, from_dict, from_json, laplacian, sphere_integral, to_json, try_divide
from .scalar import PiScalar, ball_volume, format_scalar, gamma_half, gamma_j, parse_scalar, sphere_area

__version__ = "0.1.0"
