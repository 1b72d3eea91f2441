"""Polynomial nonlinearities f together with the data the conservation
diagnostics need: f', the antiderivative F_anti (F_anti' = f), the second
antiderivative h_anti (h_anti'(u) = u f'(u)), and a declared sign class.

Built-ins:

    bbm        f(u) = u + u^2/2        (sign-changing; the classical equation)
    linear     f(u) = u                (sign-changing)
    quadratic  f(u) = u^2              (nonnegative, f(x) = 0 iff x = 0)
    quartic    f(u) = u^4              (nonnegative)

User nonlinearities are accepted as polynomial coefficient lists
c_0..c_d meaning f(u) = sum c_i u^i, with c_0 = 0 so f(0) = 0; keeping f
polynomial keeps both antiderivatives closed-form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq


class SignClass(enum.Enum):
    NON_NEGATIVE = "nonnegative"
    NON_POSITIVE = "nonpositive"
    SIGN_CHANGING = "signchanging"


@dataclass(frozen=True)
class NonlinearitySpec:
    name: str
    f: Callable[[np.ndarray], np.ndarray]
    f_prime: Callable[[np.ndarray], np.ndarray]
    F_anti: Callable[[np.ndarray], np.ndarray]
    h_anti: Callable[[np.ndarray], np.ndarray]
    sign_class: SignClass


def _poly_spec(name: str, coeffs: Sequence[float], sign_class: SignClass) -> NonlinearitySpec:
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0 or c[0] != 0.0:
        raise ValueError("polynomial nonlinearities must have zero constant term")
    c_prime = P.polyder(c)
    c_F = P.polyint(c)  # integration constant 0, so F_anti(0) = 0
    c_h = P.polyint(P.polymulx(c_prime))  # antiderivative of u * f'(u)
    return NonlinearitySpec(
        name=name,
        f=lambda u, c=c: P.polyval(u, c),
        f_prime=lambda u, c=c_prime: P.polyval(u, c),
        F_anti=lambda u, c=c_F: P.polyval(u, c),
        h_anti=lambda u, c=c_h: P.polyval(u, c),
        sign_class=sign_class,
    )


_BUILTINS = {
    "bbm": ([0.0, 1.0, 0.5], SignClass.SIGN_CHANGING),
    "linear": ([0.0, 1.0], SignClass.SIGN_CHANGING),
    "quadratic": ([0.0, 0.0, 1.0], SignClass.NON_NEGATIVE),
    "quartic": ([0.0, 0.0, 0.0, 0.0, 1.0], SignClass.NON_NEGATIVE),
}


def builtin(name: str) -> NonlinearitySpec:
    try:
        coeffs, sign_class = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown nonlinearity {name!r}; choose from {sorted(_BUILTINS)}"
        ) from None
    return _poly_spec(name, coeffs, sign_class)


def from_coefficients(coeffs: Sequence[float], name: str = "poly") -> NonlinearitySpec:
    spec = _poly_spec(name, coeffs, SignClass.SIGN_CHANGING)
    return NonlinearitySpec(
        name=spec.name,
        f=spec.f,
        f_prime=spec.f_prime,
        F_anti=spec.F_anti,
        h_anti=spec.h_anti,
        sign_class=_sampled_sign_class(spec),
    )


def _sampled_sign_class(spec: NonlinearitySpec, radius: float = 10.0, n: int = 2001) -> SignClass:
    v = spec.f(np.linspace(-radius, radius, n))
    if np.all(v >= 0.0):
        return SignClass.NON_NEGATIVE
    if np.all(v <= 0.0):
        return SignClass.NON_POSITIVE
    return SignClass.SIGN_CHANGING


def check_sign_hypotheses(
    spec: NonlinearitySpec,
    interval: tuple[float, float],
    n_samples: int = 1001,
) -> dict:
    """Report whether f is sign-definite with its only zero at the origin.

    Samples f over the interval, brackets roots between consecutive samples
    of opposite sign and refines them, and flags any zero away from the
    origin (|root| > 1e-6) or any observed sign change.  Report-only.
    """
    lo, hi = interval
    if not (lo < 0.0 < hi):
        raise ValueError("interval must contain 0")
    if n_samples < 100:
        raise ValueError("n_samples must be >= 100")
    x = np.linspace(lo, hi, n_samples)
    v = spec.f(x)

    sign_change = bool(np.any(v > 1e-12) and np.any(v < -1e-12))

    extra_zeros = [float(xx) for xx, vv in zip(x, v) if abs(vv) < 1e-12 and abs(xx) > 1e-6]
    flip = np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]
    for i in flip:
        root = brentq(lambda u: float(spec.f(np.asarray(u))), x[i], x[i + 1])
        if abs(root) > 1e-6:
            extra_zeros.append(float(root))

    observed = _sampled_sign_class(spec, radius=max(abs(lo), abs(hi)))
    report = {
        "sign_change_observed": sign_change,
        "extra_zeros": sorted(set(round(z, 12) for z in extra_zeros)),
        "declared_sign_class": spec.sign_class.value,
        "observed_sign_class": observed.value,
        "sign_class_consistent": observed is spec.sign_class,
    }
    report["passes"] = not sign_change and not report["extra_zeros"]
    return report


def lipschitz_estimate(spec: NonlinearitySpec, radius: float, n_samples: int = 1001) -> float:
    """Empirical Lipschitz constant: max |f'| over [-R, R] by sampling."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    u = np.linspace(-radius, radius, n_samples)
    return float(np.max(np.abs(spec.f_prime(u))))
