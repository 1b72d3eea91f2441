"""Conserved densities, fluxes, and drift tracking.

Three conserved currents (density C0, flux C1) are evaluated on the
semidiscrete solution, with u_t recomputed from u through the evolution
right-hand side (never finite-differenced in time) and u_tx = d_x u_t:

    mass       C0 = u                  C1 = -u_tx + f(u)
    energy     C0 = (u^2 + u_x^2)/2    C1 = -u u_tx + h(u)
    potential  C0 = F(u)               C1 = (u_tx^2 - u_t^2)/2 - f(u) u_tx + f(u)^2/2

where F' = f and h'(u) = u f'(u).  The energy integral coincides with
||u||_{H^1}^2 / 2, which is the quantity whose conservation drives the
vanish-slice experiment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .evolution import SimState
from .fields import H1, Field, derivative, integrate, norm
from .kernels import KernelSpec
from .nonlinearity import NonlinearitySpec


class CurrentId(enum.Enum):
    MASS = "mass"
    ENERGY = "energy"
    POTENTIAL = "potential"


@dataclass(frozen=True)
class JetFrame:
    """Grid samples of u and the derived quantities the currents consume."""

    u: np.ndarray
    u_x: np.ndarray
    u_t: np.ndarray
    u_tx: np.ndarray
    f: np.ndarray
    F: np.ndarray
    h: np.ndarray


def jet_frame(u: Field, nonlinearity: NonlinearitySpec, spec: KernelSpec) -> JetFrame:
    u_t = kernels.rhs(u, nonlinearity, spec)
    return JetFrame(
        u=u.values,
        u_x=derivative(u, 1).values,
        u_t=u_t.values,
        u_tx=derivative(u_t, 1).values,
        f=nonlinearity.f(u.values),
        F=nonlinearity.F_anti(u.values),
        h=nonlinearity.h_anti(u.values),
    )


@dataclass(frozen=True)
class CurrentTriple:
    id: CurrentId
    density: Callable[[JetFrame], np.ndarray]
    flux: Callable[[JetFrame], np.ndarray]


_TRIPLES = {
    CurrentId.MASS: CurrentTriple(
        CurrentId.MASS,
        density=lambda j: j.u,
        flux=lambda j: -j.u_tx + j.f,
    ),
    CurrentId.ENERGY: CurrentTriple(
        CurrentId.ENERGY,
        density=lambda j: 0.5 * (j.u**2 + j.u_x**2),
        flux=lambda j: -j.u * j.u_tx + j.h,
    ),
    CurrentId.POTENTIAL: CurrentTriple(
        CurrentId.POTENTIAL,
        density=lambda j: j.F,
        flux=lambda j: 0.5 * (j.u_tx**2 - j.u_t**2) - j.f * j.u_tx + 0.5 * j.f**2,
    ),
}


def current_triple(id: CurrentId) -> CurrentTriple:
    return _TRIPLES[id]


def density_integral(
    state: SimState, triple: CurrentTriple, nonlinearity: NonlinearitySpec, spec: KernelSpec
) -> float:
    frame = jet_frame(state.u, nonlinearity, spec)
    return integrate(Field(state.u.domain, triple.density(frame)))


def flux_at(
    state: SimState,
    triple: CurrentTriple,
    x_point: float,
    nonlinearity: NonlinearitySpec,
    spec: KernelSpec,
) -> float:
    """Flux C1 evaluated at a grid point (wrapped periodically)."""
    domain = state.u.domain
    offset = x_point - float(domain.x[0])
    idx = int(round(offset / domain.dx)) % domain.n_points
    if abs(offset - round(offset / domain.dx) * domain.dx) > 1e-9 * max(1.0, domain.dx):
        raise ValueError(f"x_point {x_point} is not a grid point")
    frame = jet_frame(state.u, nonlinearity, spec)
    return float(triple.flux(frame)[idx])


@dataclass
class DiagnosticSeries:
    times: list[float]
    mass: list[float]
    energy: list[float]
    potential: list[float]
    h1_norm: list[float]

    def __post_init__(self):
        lengths = {len(self.times), len(self.mass), len(self.energy),
                   len(self.potential), len(self.h1_norm)}
        if len(lengths) != 1:
            raise ValueError("diagnostic series columns must have equal lengths")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("diagnostic times must be strictly increasing")

    def column(self, name: str) -> list[float]:
        return getattr(self, name if name != "h1norm" else "h1_norm")


class Recorder:
    """Simulation callback accumulating the tracked quantities over time."""

    def __init__(self, nonlinearity: NonlinearitySpec, spec: KernelSpec):
        self.nonlinearity = nonlinearity
        self.spec = spec
        self.times: list[float] = []
        self.mass: list[float] = []
        self.energy: list[float] = []
        self.potential: list[float] = []
        self.h1_norm: list[float] = []

    def __call__(self, state: SimState):
        frame = jet_frame(state.u, self.nonlinearity, self.spec)
        domain = state.u.domain
        self.times.append(state.t)
        for cid, store in (
            (CurrentId.MASS, self.mass),
            (CurrentId.ENERGY, self.energy),
            (CurrentId.POTENTIAL, self.potential),
        ):
            store.append(integrate(Field(domain, _TRIPLES[cid].density(frame))))
        self.h1_norm.append(norm(state.u, H1))

    def series(self) -> DiagnosticSeries:
        return DiagnosticSeries(
            times=list(self.times),
            mass=list(self.mass),
            energy=list(self.energy),
            potential=list(self.potential),
            h1_norm=list(self.h1_norm),
        )


DEFAULT_DRIFT_TOLERANCES = {
    "mass": 1e-10,
    "energy": 1e-8,
    "potential": 1e-8,
    "h1norm": 1e-8,
}


def drift_report(series: DiagnosticSeries, tolerances: dict | None = None) -> dict:
    """Relative drift max|v(t) - v(0)| / max(|v(0)|, 1) per tracked quantity.

    The denominator is floored at 1 so quantities that start at zero do not
    blow up the ratio.  Any drift above its tolerance is flagged.
    """
    if len(series.times) < 2:
        raise ValueError("drift report needs at least two recorded times")
    tol = dict(DEFAULT_DRIFT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    report = {}
    for name in ("mass", "energy", "potential", "h1norm"):
        values = np.asarray(series.column(name))
        initial = values[0]
        drift = float(np.max(np.abs(values - initial)) / max(abs(initial), 1.0))
        report[name] = {
            "initial": float(initial),
            "drift": drift,
            "tolerance": tol[name],
            "flagged": drift > tol[name],
        }
    return report
