"""Levy densities of the factorized laws, the arcsine Thorin exponent and the
small-angle asymptotics.

A unit exponential scaled by ``c`` has Levy density ``exp(-z/c)/z``; the half
chi-square ``N^2/2`` is a Gamma(1/2, 1) variable and gets ``exp(-z)/(2z)``.
That second term is an addition of this package, so that the Frullani check
covers ``K`` and ``K~`` alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .laplace import FactorizedLaw, _check_x, log_phi_tilde, m_from_c
from .quad import (DEFAULT_TOL, QuadratureResult, arcsine_laplace, integrate,
                   integrate_semi_infinite)


@dataclass(frozen=True)
class SumExpLevyDensity:
    """``nu(dz)/dz = (1/z) * sum_i weights[i] * exp(-z * rates[i])``."""

    rates: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.rates) != len(self.weights):
            raise ValueError("rates and weights differ in length")
        if any(r <= 0 for r in self.rates):
            raise ValueError("rates must be positive")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z <= 0):
            raise DomainError("Levy density is defined for z > 0")
        acc = np.zeros_like(z)
        for r, w in zip(self.rates, self.weights):
            acc = acc + w * np.exp(-z * r)
        out = acc / z
        return float(out) if out.ndim == 0 else out

    @property
    def total_weight(self) -> float:
        """``lim_{z->0} z * density``."""
        return math.fsum(self.weights)

    def min1_moment(self, tol: float = DEFAULT_TOL) -> float:
        """``int min(1, z) nu(dz)``, finite for every member of this family."""
        near = integrate(lambda z: self(z) * z, 0.0, 1.0, tol / 2).value
        far = integrate_semi_infinite(lambda z: self(z + 1.0), tol / 2).value
        return near + far


def levy_measure(law: FactorizedLaw) -> SumExpLevyDensity:
    rates = [1.0 / c for c in law.exp_scales]
    weights = [1.0] * len(rates)
    if law.has_half_gaussian:
        rates.append(1.0)
        weights.append(0.5)
    return SumExpLevyDensity(tuple(rates), tuple(weights))


def levy_density(law: FactorizedLaw, z):
    """Levy density of ``law`` at ``z > 0`` (scalar or array)."""
    return levy_measure(law)(z)


def laplace_exponent_series(law: FactorizedLaw, x: float) -> float:
    """``-log E[exp(-x K)] = sum log(1 + c_k x) [+ log(1 + x)/2]``."""
    _check_x(x)
    terms = [math.log1p(c * x) for c in law.exp_scales]
    if law.has_half_gaussian:
        terms.append(0.5 * math.log1p(x))
    return math.fsum(terms)


def laplace_exponent_integral(law: FactorizedLaw, x: float,
                              tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int_0^inf (1 - exp(-x z)) nu(dz)`` by quadrature (Frullani form)."""
    _check_x(x)
    if x == 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    nu = levy_measure(law)
    return integrate_semi_infinite(lambda z: -np.expm1(-x * z) * nu(z), tol)


def thorin_exponent_result(x: float, tol: float = DEFAULT_TOL) -> QuadratureResult:
    _check_x(x)
    if x == 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    inner_tol = min(tol, 1e-12)

    def integrand(z):
        mu = np.array([arcsine_laplace(float(zi), inner_tol) for zi in z])
        return -np.expm1(-x * z) / z * mu

    # mu(z) ~ (pi z)^(-1/2): algebraic decay, so the doubling truncation runs
    # out to Z ~ (10/tol)^2 before the tail test passes
    return integrate_semi_infinite(integrand, tol)


def thorin_exponent(x: float, tol: float = DEFAULT_TOL) -> float:
    """``int_0^inf (dz/z) (1 - exp(-x z)) E[exp(-z G)]`` with ``G`` arcsine.

    This is the Laplace exponent at time 1 of the Gamma subordinator with
    arcsine Thorin measure; it equals ``2 log(sqrt(1+x) + sqrt(x))``.
    """
    return thorin_exponent_result(x, tol).value


def thorin_exponent_closed_form(x: float) -> float:
    _check_x(x)
    return 2.0 * math.asinh(math.sqrt(x))


def ggc_limit_exponent(parity: Literal["odd", "even"], n: int, x: float) -> float:
    """``(1/n) sum_k log(1 + c_k x)`` for the scales of ``m = 2n+1`` or ``m = 2n``.

    Converges to :func:`thorin_exponent` as ``n -> inf`` for either parity.
    """
    _check_x(x)
    if n < 1:
        raise DomainError("n must be >= 1")
    if parity not in ("odd", "even"):
        raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}")
    m = 2 * n + 1 if parity == "odd" else 2 * n
    k = np.arange(1, n + 1)
    s2 = np.sin(0.5 * np.pi * (2 * k - 1) / m) ** 2
    return math.fsum(np.log1p(x / s2)) / n


def asymptotic_limit(x: float, c: float) -> float:
    """``(sqrt(x) + sqrt(1+x))^(-pi/(2c))``."""
    _check_x(x)
    return math.exp(-m_from_c(c) * math.asinh(math.sqrt(x)))


def asymptotic_check(x: float, c: float, epsilon: float) -> float:
    """``phi_tilde_m(x) ** epsilon`` with ``m = pi/(2 c epsilon)``, real ``m``.

    The Gauss-Laplace transform of the exit time from the cone of half-angle
    ``c * epsilon``, raised to the power ``epsilon``; tends to
    :func:`asymptotic_limit` as ``epsilon -> 0`` with error ``O(epsilon)``.
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be > 0")
    m = m_from_c(c * epsilon)
    return math.exp(epsilon * log_phi_tilde(m, x))


def arcsine_thorin_integrability(tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """The two GGC integrability integrals for the arcsine Thorin measure.

    Returns ``(int_(0,1] |log h| mu(dh), int_[1,inf) mu(dh)/h)``. The first is
    ``2 log 2``; the second vanishes because the support is ``[0, 1]``.
    """
    scale = 2.0 / math.pi
    # h = sin^2 v turns the arcsine density into the uniform law on [0, pi/2]
    near = integrate(lambda v: -2.0 * np.log(np.sin(v)), 0.0, 0.5 * math.pi, tol / scale)
    return scale * near.value, 0.0
