"""Run configuration: flat INI-style `key = value` text with bracketed
sections, re-validated against the underlying module invariants at load
time so a bad file fails before any computation starts.

Sections and keys (unknown keys are rejected):

    [domain]        kind = circle|line, length, n_points
    [nonlinearity]  name = bbm|linear|quadratic|quartic
                    or coefficients = c0, c1, ... (c0 must be 0)
    [integrator]    dt, t_final, blowup_threshold, callback_stride
    [kernel]        method = spectral|convolution|expfilter
    [initial]       kind = zero|sine|bump|random|solitary and its parameters
    [experiment]    name and per-experiment parameters
    [output]        directory

The BBM_LAB_OUTDIR environment variable overrides [output] directory.
"""

from __future__ import annotations

import configparser
import hashlib
import math
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

import numpy as np

from . import nonlinearity as nl
from .evolution import SimConfig
from .experiments import BumpShape, BumpSpec, bump_field
from .fields import Domain, Field, make_domain, random_band_limited
from .kernels import KernelMethod, KernelSpec


class ConfigError(ValueError):
    pass


_KNOWN_KEYS = {
    "domain": {"kind", "length", "n_points"},
    "nonlinearity": {"name", "coefficients"},
    "integrator": {"dt", "t_final", "blowup_threshold", "callback_stride"},
    "kernel": {"method"},
    "initial": {
        "kind", "amplitude", "mode", "center", "radius", "shape",
        "seed", "kmax", "speed",
    },
    "experiment": {
        "name", "window_a", "window_b", "epsilon", "n_steps",
        "dt_list", "n_list", "n_random", "t0",
    },
    "output": {"directory"},
}


@dataclass
class RunConfig:
    domain_kind: str = "circle"
    length: float = 1.0
    n_points: int = 256
    nonlinearity_name: str = "bbm"
    coefficients: list[float] | None = None
    dt: float = 1e-3
    t_final: float = 1.0
    blowup_threshold: float = 1e6
    callback_stride: int = 100
    kernel_method: str = "spectral"
    initial_kind: str = "zero"
    amplitude: float = 0.1
    mode: int = 1
    center: float = 0.0
    radius: float = 5.0
    shape: str = "cutoff_exp"
    seed: int = 0
    kmax: int = 8
    speed: float = 1.5
    experiment_name: str = ""
    window_a: float = 0.4
    window_b: float = 0.6
    epsilon: float = 1e-12
    n_steps: int = 100
    dt_list: list[float] = dataclass_field(default_factory=lambda: [0.2, 0.1, 0.05])
    n_list: list[int] = dataclass_field(default_factory=lambda: [64, 128, 256])
    n_random: int = 20
    t0: float = 0.0
    output_dir: str = "out"
    raw_text: str = ""


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.replace(",", " ").split()]


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.replace(",", " ").split()]


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err

    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as err:
        raise ConfigError(f"config parse error: {err}") from err

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {section}.{key}")

    cfg = RunConfig(raw_text=text)

    def grab(section, key, convert, attr):
        if parser.has_option(section, key):
            raw = parser.get(section, key)
            try:
                setattr(cfg, attr, convert(raw))
            except ValueError as err:
                raise ConfigError(f"invalid value for {section}.{key}: {err}") from err

    grab("domain", "kind", str, "domain_kind")
    grab("domain", "length", float, "length")
    grab("domain", "n_points", int, "n_points")
    grab("nonlinearity", "name", str, "nonlinearity_name")
    grab("nonlinearity", "coefficients", _float_list, "coefficients")
    grab("integrator", "dt", float, "dt")
    grab("integrator", "t_final", float, "t_final")
    grab("integrator", "blowup_threshold", float, "blowup_threshold")
    grab("integrator", "callback_stride", int, "callback_stride")
    grab("kernel", "method", str, "kernel_method")
    grab("initial", "kind", str, "initial_kind")
    grab("initial", "amplitude", float, "amplitude")
    grab("initial", "mode", int, "mode")
    grab("initial", "center", float, "center")
    grab("initial", "radius", float, "radius")
    grab("initial", "shape", str, "shape")
    grab("initial", "seed", int, "seed")
    grab("initial", "kmax", int, "kmax")
    grab("initial", "speed", float, "speed")
    grab("experiment", "name", str, "experiment_name")
    grab("experiment", "window_a", float, "window_a")
    grab("experiment", "window_b", float, "window_b")
    grab("experiment", "epsilon", float, "epsilon")
    grab("experiment", "n_steps", int, "n_steps")
    grab("experiment", "dt_list", _float_list, "dt_list")
    grab("experiment", "n_list", _int_list, "n_list")
    grab("experiment", "n_random", int, "n_random")
    grab("experiment", "t0", float, "t0")
    grab("output", "directory", str, "output_dir")

    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    if cfg.domain_kind not in ("circle", "line"):
        raise ConfigError(f"domain.kind must be circle or line, got {cfg.domain_kind!r}")
    if cfg.length <= 0:
        raise ConfigError(f"domain.length must be positive, got {cfg.length}")
    if cfg.domain_kind == "circle" and cfg.length != 1.0:
        raise ConfigError("domain.length must be 1 for circle domains")
    if cfg.n_points < 8:
        raise ConfigError(f"domain.n_points must be >= 8, got {cfg.n_points}")
    if cfg.dt <= 0:
        raise ConfigError(f"integrator.dt must be positive, got {cfg.dt}")
    if cfg.t_final <= cfg.dt:
        raise ConfigError("integrator.t_final must exceed integrator.dt")
    if cfg.blowup_threshold <= 0:
        raise ConfigError("integrator.blowup_threshold must be positive")
    if cfg.callback_stride < 1:
        raise ConfigError("integrator.callback_stride must be >= 1")
    if cfg.kernel_method not in ("spectral", "convolution", "expfilter"):
        raise ConfigError(f"kernel.method unknown: {cfg.kernel_method!r}")
    if cfg.initial_kind not in ("zero", "sine", "bump", "random", "solitary"):
        raise ConfigError(f"initial.kind unknown: {cfg.initial_kind!r}")
    if cfg.coefficients is not None and (not cfg.coefficients or cfg.coefficients[0] != 0.0):
        raise ConfigError("nonlinearity.coefficients must start with c0 = 0")
    if not math.isfinite(cfg.amplitude):
        raise ConfigError("initial.amplitude must be finite")


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(cfg.raw_text.encode()).hexdigest()[:12]


def build_domain(cfg: RunConfig) -> Domain:
    return make_domain(cfg.domain_kind, cfg.length, cfg.n_points)


def build_nonlinearity(cfg: RunConfig) -> nl.NonlinearitySpec:
    if cfg.coefficients is not None:
        return nl.from_coefficients(cfg.coefficients)
    return nl.builtin(cfg.nonlinearity_name)


def build_kernel(cfg: RunConfig, domain: Domain | None = None) -> KernelSpec:
    return KernelSpec(domain or build_domain(cfg), KernelMethod(cfg.kernel_method))


def build_sim_config(cfg: RunConfig, kernel: KernelSpec | None = None) -> SimConfig:
    return SimConfig(
        t_final=cfg.t_final,
        dt=cfg.dt,
        kernel=kernel or build_kernel(cfg),
        nonlinearity=build_nonlinearity(cfg),
        blowup_threshold=cfg.blowup_threshold,
        callback_stride=cfg.callback_stride,
    )


def solitary_wave(domain: Domain, speed: float, center: float) -> Field:
    """Closed-form traveling-wave profile for the classical nonlinearity,
    u = 3(c-1) sech^2( sqrt(1 - 1/c) (x - center) / 2 ), valid for c > 1."""
    if speed <= 1.0:
        raise ConfigError("solitary waves require speed > 1")
    kappa = 0.5 * math.sqrt(1.0 - 1.0 / speed)
    arg = kappa * (domain.x - center)
    return Field(domain, 3.0 * (speed - 1.0) / np.cosh(arg) ** 2)


def build_initial(cfg: RunConfig, domain: Domain) -> Field:
    kind = cfg.initial_kind
    if kind == "zero":
        return Field(domain, np.zeros(domain.n_points))
    if kind == "sine":
        arg = 2.0 * np.pi * cfg.mode * (domain.x - domain.x[0]) / domain.length
        return Field(domain, cfg.amplitude * np.sin(arg))
    if kind == "bump":
        spec = BumpSpec(cfg.center, cfg.radius, cfg.amplitude, BumpShape(cfg.shape))
        return bump_field(domain, spec)
    if kind == "random":
        rng = np.random.default_rng(cfg.seed)
        return random_band_limited(domain, cfg.kmax, rng, amplitude=cfg.amplitude)
    if kind == "solitary":
        return solitary_wave(domain, cfg.speed, cfg.center)
    raise ConfigError(f"initial.kind unknown: {kind!r}")
