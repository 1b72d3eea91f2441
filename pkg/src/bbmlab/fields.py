"""Grids, sampled fields, spectral transforms, and Sobolev norms.

Conventions used throughout the package:

* A circle domain is the unit-length periodic interval [0, 1) with grid
  points x_j = j/n.  A line domain is the symmetric truncation [-L, L)
  with length = 2L and x_j = -L + j*dx; spectral operations treat it as
  periodic with period 2L, so fields must be numerically negligible near
  the truncation boundary.
* Spectral coefficients follow the Fourier-series normalization
  c_k = (1/n) sum_j u_j exp(-2 pi i k x_j / length), stored in numpy fft
  ordering, so that u(x) = sum_k c_k exp(2 pi i k x / length).
* Mode k carries the continuous wavenumber xi_k = 2 pi k / length; a
  derivative of given order multiplies c_k by (i xi_k)^order.
* The H^s norm uses spectral weights (1 + xi_k^2)^s, which makes
  ||u||_{H^1}^2 = integral(u^2 + u_x^2) dx for band-limited fields.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MIN_POINTS = 8


class DomainKind(enum.Enum):
    CIRCLE = "circle"
    LINE = "line"


@dataclass(frozen=True)
class Domain:
    """Uniform 1-D grid on the unit circle or on a truncated line."""

    kind: DomainKind
    length: float
    n_points: int

    def __post_init__(self):
        if self.n_points < MIN_POINTS:
            raise ValueError(f"n_points must be >= {MIN_POINTS}, got {self.n_points}")
        if not self.length > 0:
            raise ValueError(f"length must be positive, got {self.length}")
        if self.kind is DomainKind.CIRCLE and self.length != 1.0:
            raise ValueError("circle domains use the unit period; length must be 1")

    @cached_property
    def dx(self) -> float:
        return self.length / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        j = np.arange(self.n_points)
        if self.kind is DomainKind.CIRCLE:
            return j * self.dx
        return -0.5 * self.length + j * self.dx

    @cached_property
    def xi(self) -> np.ndarray:
        """Continuous wavenumbers 2*pi*k/length in fft ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)


def make_domain(kind: DomainKind | str, length: float, n_points: int) -> Domain:
    if isinstance(kind, str):
        try:
            kind = DomainKind(kind.lower())
        except ValueError:
            raise ValueError(f"unknown domain kind {kind!r}") from None
    return Domain(kind, float(length), int(n_points))


@dataclass(frozen=True)
class Field:
    """Real samples of u on a domain's grid, one value per grid point."""

    domain: Domain
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.domain.n_points,):
            raise ValueError(
                f"expected {self.domain.n_points} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")


def zeros(domain: Domain) -> Field:
    return Field(domain, np.zeros(domain.n_points))


def field_from_function(domain: Domain, fn) -> Field:
    return Field(domain, np.asarray(fn(domain.x), dtype=float))


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real field, indexed by wavenumber in fft order."""

    domain: Domain
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        object.__setattr__(self, "coefficients", c)
        n = self.domain.n_points
        if c.shape != (n,):
            raise ValueError(f"expected {n} coefficients, got shape {c.shape}")
        # real fields have Hermitian spectra: c[-k] == conj(c[k])
        mirrored = np.conj(c[(-np.arange(n)) % n])
        scale = float(np.max(np.abs(c))) or 1.0
        if float(np.max(np.abs(c - mirrored))) > 1e-8 * scale:
            raise ValueError("coefficients are not Hermitian-symmetric")


def to_spectral(field: Field) -> SpectralField:
    n = field.domain.n_points
    return SpectralField(field.domain, np.fft.fft(field.values) / n)


def from_spectral(sf: SpectralField) -> Field:
    n = sf.domain.n_points
    values = np.fft.ifft(sf.coefficients * n)
    return Field(sf.domain, values.real)


def derivative(field: Field, order: int) -> Field:
    """Spectral d^order/dx^order; exact for band-limited fields."""
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    n = field.domain.n_points
    mult = (1j * field.domain.xi) ** order
    if order == 1 and n % 2 == 0:
        # the Nyquist mode has no well-defined odd derivative on the grid
        mult = mult.copy()
        mult[n // 2] = 0.0
    c = np.fft.fft(field.values)
    return Field(field.domain, np.fft.ifft(mult * c).real)


def integrate(field: Field) -> float:
    """Rectangle quadrature dx * sum(u); spectrally exact on periodic domains."""
    return field.domain.dx * float(np.sum(field.values))


@dataclass(frozen=True)
class NormKind:
    tag: str
    s: float = 0.0


L2 = NormKind("l2")
LINF = NormKind("linf")


def sobolev(s: float) -> NormKind:
    if s < 0:
        raise ValueError(f"H^s norms require s >= 0, got {s}")
    return NormKind("hs", float(s))


H1 = sobolev(1.0)


def norm(field: Field, kind: NormKind) -> float:
    if kind.tag == "linf":
        return float(np.max(np.abs(field.values)))
    if kind.tag == "l2":
        return float(np.sqrt(field.domain.dx * np.sum(field.values**2)))
    if kind.tag == "hs":
        n = field.domain.n_points
        c = np.fft.fft(field.values) / n
        weights = (1.0 + field.domain.xi**2) ** kind.s
        return float(np.sqrt(field.domain.length * np.sum(weights * np.abs(c) ** 2)))
    raise ValueError(f"unknown norm kind {kind.tag!r}")


def random_band_limited(
    domain: Domain,
    kmax: int,
    rng: np.random.Generator,
    amplitude: float = 1.0,
    decay: float = 2.0,
) -> Field:
    """Random trigonometric polynomial with coefficients decaying like k^-decay.

    Normalized so the sup norm equals `amplitude`; zero mean.
    """
    n = domain.n_points
    if not 1 <= kmax < n // 2:
        raise ValueError(f"kmax must be in [1, {n // 2 - 1}], got {kmax}")
    c = np.zeros(n, dtype=complex)
    for k in range(1, kmax + 1):
        z = rng.standard_normal() + 1j * rng.standard_normal()
        c[k] = z / (1.0 + k) ** decay
        c[n - k] = np.conj(c[k])
    values = np.fft.ifft(c * n).real
    peak = float(np.max(np.abs(values)))
    if peak > 0:
        values = values * (amplitude / peak)
    return Field(domain, values)


def spectral_tail_ratio(field: Field) -> float:
    """Resolution monitor: peak magnitude in the top third of the spectrum
    relative to the spectral peak.  Stays below ~1e-10 for resolved fields."""
    n = field.domain.n_points
    c = np.abs(np.fft.fft(field.values))
    k = np.abs(np.fft.fftfreq(n) * n)
    tail = k >= n / 3.0
    peak = float(np.max(c))
    if peak == 0.0:
        return 0.0
    return float(np.max(c[tail])) / peak


def resample(field: Field, n_new: int) -> Field:
    """Trigonometric interpolation onto an n_new-point grid of the same domain."""
    n = field.domain.n_points
    c = np.fft.fft(field.values) / n
    c_new = np.zeros(n_new, dtype=complex)
    kmax = min(n, n_new) // 2
    for k in range(-kmax + 1, kmax):
        c_new[k % n_new] = c[k % n]
    new_domain = Domain(field.domain.kind, field.domain.length, n_new)
    return Field(new_domain, np.fft.ifft(c_new * n_new).real)
