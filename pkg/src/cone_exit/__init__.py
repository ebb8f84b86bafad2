"""Exit times of planar Brownian motion from a cone.

Closed-form Gauss-Laplace transforms, their Chebyshev factorization into
exponential mixtures, Levy and Thorin measures, small-angle asymptotics, and
Monte Carlo verification.
"""

from .kernels import BACKEND
from .laplace import (FactorizedLaw, Variant, factorize, g_plus_minus, laplace_of_law, phi,
                      phi_tilde, pq_polynomial, quadratic_factor, spectral_scales)
from .levy import (asymptotic_check, asymptotic_limit, ggc_limit_exponent,
                   laplace_exponent_integral, laplace_exponent_series, levy_density,
                   thorin_exponent)
from .mc import (MCEstimate, PathConfig, estimate_gauss_laplace, estimate_law_laplace,
                 simulate_exits)
from .poly import Polynomial, chebyshev_T, eval_polynomial, log_chebyshev_T, real_roots
from .quad import QuadratureResult, arcsine_laplace, integrate, integrate_semi_infinite

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FactorizedLaw", "MCEstimate", "PathConfig", "Polynomial", "QuadratureResult",
    "Variant", "arcsine_laplace", "asymptotic_check", "asymptotic_limit", "chebyshev_T",
    "estimate_gauss_laplace", "estimate_law_laplace", "eval_polynomial", "factorize",
    "g_plus_minus", "ggc_limit_exponent", "integrate", "integrate_semi_infinite",
    "laplace_exponent_integral", "laplace_exponent_series", "laplace_of_law", "levy_density",
    "log_chebyshev_T", "phi", "phi_tilde", "pq_polynomial", "quadratic_factor", "real_roots",
    "simulate_exits", "spectral_scales", "thorin_exponent",
]
