"""Interference-limited fading-link analysis toolkit.

Computes the bit-error-rate of a BPSK link with Nakagami-m branch fading,
M-branch maximal-ratio combining and a single Rayleigh co-channel interferer,
both analytically and by Monte Carlo simulation, each route validating the
other.
"""

from .ber import (
    CROSS_CHECK_THRESHOLD,
    DEFAULT_GL_ORDER,
    BerResult,
    CrossCheckError,
    ber,
    ber_direct,
    ber_gl,
    conditional_ber,
)
from .channel import (
    FadingParams,
    InterfererParams,
    LinkBudget,
    Scenario,
    SingularityError,
    SirDistribution,
    interference_scale,
    nakagami_pdf,
    rayleigh_pdf,
    sir_cdf,
    sir_distribution,
    sir_pdf,
)
from .montecarlo import (
    McEstimate,
    RngStream,
    estimate_ber,
    gamma_variate,
    ks_statistic,
    sample_sir,
)
from .numerics import (
    GaussLaguerreRule,
    QuadratureError,
    QuadratureResult,
    erfc,
    gauss_laguerre_half,
    integrate_semi_infinite,
    ln_gamma,
    upper_incomplete_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "BerResult", "CROSS_CHECK_THRESHOLD", "CrossCheckError", "DEFAULT_GL_ORDER",
    "FadingParams", "GaussLaguerreRule", "InterfererParams", "LinkBudget",
    "McEstimate", "QuadratureError", "QuadratureResult", "RngStream",
    "Scenario", "SingularityError", "SirDistribution",
    "ber", "ber_direct", "ber_gl", "conditional_ber", "erfc", "estimate_ber",
    "gamma_variate", "gauss_laguerre_half", "integrate_semi_infinite",
    "interference_scale", "ks_statistic", "ln_gamma", "nakagami_pdf",
    "rayleigh_pdf", "sample_sir", "sir_cdf", "sir_distribution", "sir_pdf",
    "upper_incomplete_gamma",
]
