"""Composition operators on Hardy spaces: counting functions, model
spaces, and a boundary compactness criterion, with a numba-accelerated
kernel layer (``NEVLAB_BACKEND`` selects numba/numpy)."""

from ._backend import BACKEND, HAVE_NUMBA, USE_NUMBA
from ._kernels import warmup
from .criterion import (
    CriterionProfile,
    ProbeReport,
    VerdictReport,
    compactness_verdict,
    criterion_integrand,
    criterion_profile,
    one_component_probe,
)
from .errors import (
    AtBasePointError,
    AtomSingularityError,
    BadRadiusError,
    BasePointInDiskError,
    ConfigError,
    ConstantMapError,
    ConstantPolynomialError,
    DiskNotInDomainError,
    InsufficientProfileError,
    NevlabError,
    NoConvergenceError,
    NonIntegerWindingError,
    NotUnitVectorError,
    SequenceViolationError,
    ZeroNearContourError,
)
from .inner import (
    BlaschkeProduct,
    InnerFunction,
    SingularInner,
    inner_derivative,
    inner_eval,
    radial_modulus_report,
)
from .model_space import (
    CohnReport,
    DerivativeBoundRecord,
    KernelPoint,
    ModelSpaceBasis,
    ReproduceResult,
    cohn_functional,
    kernel_derivative_bound_check,
    kernel_eval,
    kernel_norm,
    kernel_point,
    pn_project,
    pseudo_disk_contains,
    reproduce_check,
    tm_basis,
)
from .nevanlinna import (
    CountingSample,
    IdentityReport,
    LittlewoodReport,
    SelfMap,
    SubmeanReport,
    counting,
    counting_avg,
    counting_values,
    littlewood_bound,
    littlewood_paley_verify,
    stanton_verify,
    submean_check,
)
from .numerics import (
    MultiPolynomial,
    Polynomial,
    RationalFunction,
    hardy2_norm,
    poly_roots,
    power_series_divide,
    taylor_order_for,
    zeros_in_disk,
)
from .quadrature import (
    DiskQuadrature,
    SphereQuadrature,
    circle_mean,
    hardy_norm_ball,
    sphere_uniform,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "USE_NUMBA",
    "warmup",
    "CriterionProfile",
    "ProbeReport",
    "VerdictReport",
    "compactness_verdict",
    "criterion_integrand",
    "criterion_profile",
    "one_component_probe",
    "AtBasePointError",
    "AtomSingularityError",
    "BadRadiusError",
    "BasePointInDiskError",
    "ConfigError",
    "ConstantMapError",
    "ConstantPolynomialError",
    "DiskNotInDomainError",
    "InsufficientProfileError",
    "NevlabError",
    "NoConvergenceError",
    "NonIntegerWindingError",
    "NotUnitVectorError",
    "SequenceViolationError",
    "ZeroNearContourError",
    "BlaschkeProduct",
    "InnerFunction",
    "SingularInner",
    "inner_derivative",
    "inner_eval",
    "radial_modulus_report",
    "CohnReport",
    "DerivativeBoundRecord",
    "KernelPoint",
    "ModelSpaceBasis",
    "ReproduceResult",
    "cohn_functional",
    "kernel_derivative_bound_check",
    "kernel_eval",
    "kernel_norm",
    "kernel_point",
    "pn_project",
    "pseudo_disk_contains",
    "reproduce_check",
    "tm_basis",
    "CountingSample",
    "IdentityReport",
    "LittlewoodReport",
    "SelfMap",
    "SubmeanReport",
    "counting",
    "counting_avg",
    "counting_values",
    "littlewood_bound",
    "littlewood_paley_verify",
    "stanton_verify",
    "submean_check",
    "MultiPolynomial",
    "Polynomial",
    "RationalFunction",
    "hardy2_norm",
    "poly_roots",
    "power_series_divide",
    "taylor_order_for",
    "zeros_in_disk",
    "DiskQuadrature",
    "SphereQuadrature",
    "circle_mean",
    "hardy_norm_ball",
    "sphere_uniform",
    "__version__",
]
