"""Link-scenario types and the analytical signal-to-interference-ratio distribution.

The desired signal fades per branch with a Nakagami-m amplitude (squared
amplitude gamma-distributed), the single co-channel interferer is Rayleigh,
and the M maximal-ratio-combined branches yield an SIR whose density has the
two-parameter closed form carried by :class:`SirDistribution`.

All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class SingularityError(ValueError):
    """Density evaluation requested exactly at an integrable singularity."""


@dataclass(frozen=True)
class FadingParams:
    """Nakagami severity m (>= 0.5) and mean branch power sigma = E(h^2) > 0."""

    m: float
    sigma: float = 1.0

    def __post_init__(self):
        if not self.m >= 0.5:
            raise ValueError(f"Nakagami parameter m must be >= 0.5, got {self.m}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")


@dataclass(frozen=True)
class InterfererParams:
    """Mean interferer fading power rho = E(alpha^2) > 0."""

    rho: float = 1.0

    def __post_init__(self):
        if not self.rho > 0.0:
            raise ValueError(f"rho must be > 0, got {self.rho}")


@dataclass(frozen=True)
class LinkBudget:
    """Transmit powers (dBm), link distances (meters) and path-loss exponent.

    Only the power difference p2_dbm - p1_dbm and the distance ratio s/t enter
    the interference-limited model; absolute powers and absolute distances are
    accepted for convenience but affect nothing else (noise is out of model).
    """

    p1_dbm: float
    p2_dbm: float
    s: float
    t: float
    n: float

    def __post_init__(self):
        if not (math.isfinite(self.p1_dbm) and math.isfinite(self.p2_dbm)):
            raise ValueError("dBm powers must be finite")
        if not self.s > 0.0:
            raise ValueError(f"source-receiver distance s must be > 0, got {self.s}")
        if not self.t > 0.0:
            raise ValueError(f"interferer-receiver distance t must be > 0, got {self.t}")
        if not self.n > 0.0:
            raise ValueError(f"path-loss exponent n must be > 0, got {self.n}")


@dataclass(frozen=True)
class Scenario:
    """A complete link configuration: fading, interferer, geometry, diversity order."""

    fading: FadingParams
    interferer: InterfererParams
    link: LinkBudget
    branches: int = 1

    def __post_init__(self):
        if not (isinstance(self.branches, int) and self.branches >= 1):
            raise ValueError(f"branches must be an integer >= 1, got {self.branches}")


@dataclass(frozen=True)
class SirDistribution:
    """Reduced two-parameter form of the combined-SIR density.

    pdf(y) = shape * beta**shape * y**(shape-1) * (1 + beta*y)**-(shape+1)
    cdf(y) = (beta*y / (1 + beta*y))**shape

    shape = M*m; beta folds the power ratio, distance ratio, path-loss
    exponent and the two mean fading powers into a single scale.  The mean of
    this distribution diverges for shape <= 1, so no mean accessor exists.
    """

    shape: float
    beta: float

    def __post_init__(self):
        if not self.shape >= 0.5:
            raise ValueError(f"shape must be >= 0.5, got {self.shape}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be > 0, got {self.beta}")


def nakagami_pdf(x, params: FadingParams):
    """Nakagami amplitude density (2/Gamma(m)) (m/O)^m x^(2m-1) e^(-m x^2 / O).

    Reduces to the Rayleigh density for m = 1.  Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("amplitude must be >= 0")
    m, omega = params.m, params.sigma
    norm = 2.0 / math.gamma(m) * (m / omega) ** m
    out = norm * x ** (2.0 * m - 1.0) * np.exp(-m * x * x / omega)
    return float(out) if out.ndim == 0 else out


def rayleigh_pdf(x, omega: float):
    """Rayleigh amplitude density (2/O) x e^(-x^2 / O)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise ValueError("amplitude must be >= 0")
    if not omega > 0.0:
        raise ValueError(f"omega must be > 0, got {omega}")
    out = (2.0 / omega) * x * np.exp(-x * x / omega)
    return float(out) if out.ndim == 0 else out


def interference_scale(link: LinkBudget, rho: float) -> float:
    """Scale c = (P2/P1)_linear * (s/t)^n * rho multiplying the interferer power."""
    if not rho > 0.0:
        raise ValueError(f"rho must be > 0, got {rho}")
    return 10.0 ** ((link.p2_dbm - link.p1_dbm) / 10.0) * (link.s / link.t) ** link.n * rho


def sir_distribution(scenario: Scenario) -> SirDistribution:
    """Reduce a scenario to the (shape, beta) parameters of its SIR law."""
    fading = scenario.fading
    c = interference_scale(scenario.link, scenario.interferer.rho)
    return SirDistribution(shape=scenario.branches * fading.m,
                           beta=fading.m / fading.sigma * c)


def sir_pdf(dist: SirDistribution, y):
    """Density of the combined SIR at y >= 0 (y > 0 required when shape < 1)."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0.0):
        raise ValueError("SIR must be >= 0")
    if dist.shape < 1.0 and np.any(y == 0.0):
        raise SingularityError("pdf diverges at y = 0 for shape < 1; evaluate at y > 0")
    s, b = dist.shape, dist.beta
    out = s * b ** s * y ** (s - 1.0) * (1.0 + b * y) ** -(s + 1.0)
    return float(out) if out.ndim == 0 else out


def sir_cdf(dist: SirDistribution, y):
    """Distribution function (beta*y / (1 + beta*y))**shape; 0 at 0, 1 at infinity."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0.0):
        raise ValueError("SIR must be >= 0")
    t = dist.beta * y
    out = (t / (1.0 + t)) ** dist.shape
    return float(out) if out.ndim == 0 else out
