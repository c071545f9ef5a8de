"""Special functions and semi-infinite quadrature used by the analytical link model.

Everything in this module is a pure function of its arguments; there is no
shared mutable state, so all operations are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from scipy import integrate

SQRT_PI = math.sqrt(math.pi)

# Default tolerances for all analytical evaluations; tight enough that Monte
# Carlo statistical error dominates every cross-validation.
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12

_EPS = 2.220446049250313e-16
_FPMIN = 1e-300
_MAX_ITER = 500

MAX_GL_ORDER = 128


class QuadratureError(RuntimeError):
    """Quadrature failed to converge. Carries the best available estimate."""

    def __init__(self, message: str, best_estimate: float = math.nan,
                 error_estimate: float = math.inf):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a convergent quadrature together with its error bound."""

    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("abs_error_estimate must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")


def ln_gamma(a: float) -> float:
    """Natural logarithm of the gamma function, a > 0."""
    if not a > 0.0:
        raise ValueError(f"ln_gamma requires a > 0, got {a}")
    return math.lgamma(a)


def erfc(x: float) -> float:
    """Complementary error function; value in (0, 2) for finite x."""
    return math.erfc(x)


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Non-regularized upper incomplete gamma integral over (x, inf).

    Evaluated through the regularized forms: a power series for the lower
    integral when x < a + 1, a modified-Lentz continued fraction for the
    upper integral otherwise.  Monotonically non-increasing in x.
    """
    if not a > 0.0:
        raise ValueError(f"upper_incomplete_gamma requires a > 0, got {a}")
    if not x >= 0.0:
        raise ValueError(f"upper_incomplete_gamma requires x >= 0, got {x}")
    if x == 0.0:
        return math.exp(math.lgamma(a))
    if x < a + 1.0:
        return math.exp(math.lgamma(a)) * (1.0 - _lower_regularized_series(a, x))
    return math.exp(math.lgamma(a)) * _upper_regularized_cf(a, x)


def _lower_regularized_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by series; needs x < a + 1."""
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise RuntimeError(f"incomplete-gamma series stalled at a={a}, x={x}")


def _upper_regularized_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by continued fraction; x >= a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise RuntimeError(f"incomplete-gamma continued fraction stalled at a={a}, x={x}")


def integrate_semi_infinite(f: Callable[[float], float],
                            rel_tol: float = DEFAULT_REL_TOL,
                            abs_tol: float = DEFAULT_ABS_TOL) -> QuadratureResult:
    """Adaptively integrate f over (0, inf).

    Tolerates an integrable power singularity at the origin up to y^(-1/2):
    the substitution y = u**2 removes it before the transformed integrand is
    handed to adaptive Gauss-Kronrod quadrature.  The endpoint itself is
    never evaluated.
    """
    if not (rel_tol > 0.0 and abs_tol > 0.0):
        raise ValueError("tolerances must be positive")

    def transformed(u: float) -> float:
        return 2.0 * u * f(u * u)

    out = integrate.quad(transformed, 0.0, math.inf,
                         epsabs=abs_tol, epsrel=rel_tol,
                         limit=250, full_output=1)
    value, abs_err, info = out[0], out[1], out[2]
    if math.isnan(value):
        raise QuadratureError("integrand produced NaN", best_estimate=value,
                              error_estimate=abs_err)
    if len(out) > 3:
        raise QuadratureError(f"quadrature did not converge: {out[3]}",
                              best_estimate=value, error_estimate=abs_err)
    return QuadratureResult(value=value, abs_error_estimate=abs_err,
                            evaluations=int(info["neval"]))


@dataclass(frozen=True)
class GaussLaguerreRule:
    """Nodes and weights for the generalized weight y^(-1/2) * exp(-y) on (0, inf)."""

    order: int
    nodes: tuple
    weights: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.nodes) != self.order or len(self.weights) != self.order:
            raise ValueError("nodes/weights length must equal order")
        prev = 0.0
        for y, w in zip(self.nodes, self.weights):
            if not y > prev:
                raise ValueError("nodes must be positive and strictly increasing")
            if not w > 0.0:
                raise ValueError("weights must be positive")
            prev = y
        if abs(math.fsum(self.weights) - SQRT_PI) > 1e-12:
            raise ValueError("weight sum must equal sqrt(pi) to 1e-12")


_ALPHA = -0.5  # exponent of the quadrature weight y^alpha * exp(-y)


def _orthonormal_eval(order: int, x: float):
    """Evaluate the orthonormal polynomial recurrence for the y^(-1/2)e^(-y) weight.

    Returns (p_n(x), p_n'(x), sum of p_k(x)^2 for k < n); the last term is the
    reciprocal Christoffel number that yields the quadrature weight at a root.
    """
    p_prev = 0.0
    dp_prev = 0.0
    p = 1.0 / math.sqrt(SQRT_PI)
    dp = 0.0
    christoffel = 0.0
    for k in range(order):
        christoffel += p * p
        a_k = 2.0 * k + _ALPHA + 1.0
        b_k = math.sqrt(k * (k + _ALPHA)) if k > 0 else 0.0
        b_next = math.sqrt((k + 1.0) * (k + 1.0 + _ALPHA))
        p_next = ((x - a_k) * p - b_k * p_prev) / b_next
        dp_next = (p + (x - a_k) * dp - b_k * dp_prev) / b_next
        p_prev, dp_prev = p, dp
        p, dp = p_next, dp_next
    return p, dp, christoffel


def gauss_laguerre_half(order: int) -> GaussLaguerreRule:
    """Generalized Gauss-Laguerre rule for the weight y^(-1/2) * exp(-y).

    Nodes are found by Newton iteration on the recurrence-defined orthonormal
    polynomials, marching upward from interlacing initial guesses; weights
    come from the Christoffel sums.  Exact for polynomials up to degree
    2*order - 1 under the weight.
    """
    if not 1 <= order <= MAX_GL_ORDER:
        raise ValueError(f"order must be in [1, {MAX_GL_ORDER}], got {order}")
    return _gauss_laguerre_half_cached(order)


@lru_cache(maxsize=None)
def _gauss_laguerre_half_cached(order: int) -> GaussLaguerreRule:
    n = order
    nodes = []
    weights = []
    z = 0.0
    for i in range(n):
        if i == 0:
            z = (1.0 + _ALPHA) * (3.0 + 0.92 * _ALPHA) / (1.0 + 2.4 * n + 1.8 * _ALPHA)
        elif i == 1:
            z += (15.0 + 6.25 * _ALPHA) / (1.0 + 0.9 * _ALPHA + 2.5 * n)
        else:
            ai = float(i - 1)
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)
                  + 1.26 * ai * _ALPHA / (1.0 + 3.5 * ai)) \
                 * (z - nodes[i - 2]) / (1.0 + 0.3 * _ALPHA)
        last_step = math.inf
        for it in range(100):
            p, dp, _ = _orthonormal_eval(n, z)
            step = p / dp
            z -= step
            if abs(step) <= 1e-14 * (1.0 + abs(z)):
                break
            if it > 3 and abs(step) >= last_step:
                break  # rounding floor reached; step no longer shrinks
            last_step = abs(step)
        else:
            raise RuntimeError(f"Newton iteration stalled at node {i} of order {n}")
        _, _, christoffel = _orthonormal_eval(n, z)
        nodes.append(z)
        weights.append(1.0 / christoffel)
    return GaussLaguerreRule(order=n, nodes=tuple(nodes), weights=tuple(weights))
