"""bbmlab: a workbench for the generalized BBM equation
u_t - u_txx + d_x f(u) = 0.

The equation is evolved through its nonlocal form u_t = -d_x (1 - d_xx)^-1 f(u),
its conservation laws are verified both in exact arithmetic and as drift
diagnostics along simulations, and its unique-continuation mechanisms are
exercised as numerical experiments.
"""

from .evolution import BlowupError, PicardResult, SimConfig, SimResult, SimState, picard_iterate, simulate, step_rk4
from .fields import (
    H1,
    L2,
    LINF,
    Domain,
    DomainKind,
    Field,
    NormKind,
    SpectralField,
    derivative,
    field_from_function,
    from_spectral,
    integrate,
    make_domain,
    norm,
    random_band_limited,
    resample,
    sobolev,
    spectral_tail_ratio,
    to_spectral,
    zeros,
)
from .kernels import (
    KernelMethod,
    KernelSpec,
    dx_lambda_inv2,
    green_eval,
    identity_residuals,
    lambda_inv2,
    rhs,
)
from .nonlinearity import (
    NonlinearitySpec,
    SignClass,
    builtin,
    check_sign_hypotheses,
    from_coefficients,
    lipschitz_estimate,
)

__version__ = "0.1.0"
