"""Genus-1 Hurwitz-space Frobenius structures and their numerical verification.

The package builds the torus coverings lambda = P + c from branch-point
triples, evaluates the W / Schiffer / Bergman kernels and their rotation
coefficients, maps coverings to the flat coordinates of four concrete
Frobenius structures (one holomorphic, three on the doubled coordinate
space), evaluates the closed-form prepotentials and G-functions, and
verifies WDVV, quasihomogeneity, flatness, Rauch, and tau-function
relations numerically.
"""

from .errors import (
    ConditioningError,
    DegeneracyError,
    DomainError,
    PoleError,
    PrecisionError,
    PrecisionWarning,
)
from .frobenius import (
    KINDS,
    EulerData,
    FlatCoords,
    StructureKind,
    check_unit_field,
    constant_metric,
    euler_data,
    flat_coordinates,
)
from .kernels import (
    RotationData,
    bergman_kernel,
    check_flatness,
    check_rauch,
    cycle_integral,
    hamiltonians,
    rotation_data,
    schiffer_kernel,
    w_kernel,
)
from .prepotential import (
    DEFAULT_ENGINE,
    DerivativeEngine,
    derivative,
    eval_F,
    eval_G,
    gradient,
    singular_distance,
    third_tensor,
    validate_point,
)
from .specialfn import (
    DEFAULT_SERIES,
    SeriesConfig,
    carlson_rf,
    dedekind_eta,
    eisenstein_e2,
    gamma_chazy,
    theta1,
    weierstrass_p,
    weierstrass_zeta_eta1,
)
from .torus_cover import (
    LocalFrame,
    TorusCovering,
    covering_from_branch_points,
    lambda_map,
    local_frame,
)
from .wdvv import (
    DEFAULT_TOLERANCES,
    VerificationReport,
    associativity_check,
    euler_check,
    f1_metric_check,
    getzler_check,
    realness_check,
    run_suite,
    sample_branch_points,
    sample_point,
    tau_relation_check,
    wdvv_residual,
)

__version__ = "0.1.0"
