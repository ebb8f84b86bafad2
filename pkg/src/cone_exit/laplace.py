"""Closed-form Laplace transforms of the cone exit time and their factorizations.

For a cone of half-angle ``c`` put ``m = pi / (2c)``. Then

    phi_m(x)       = 2 / (G+(x)^m + G-(x)^m) = 1 / T_m(sqrt(1 + x)),
    phi_tilde_m(x) = phi_m(x) / sqrt(1 + x),

with ``G+-(x) = sqrt(1 + x) +- sqrt(x)``. For integer ``m`` these are Laplace
transforms of finite sums of a half chi-square and scaled unit exponentials;
the scales come from the positive zeros of ``T_m``.

Non-integer ``m`` is accepted by :func:`phi` and :func:`phi_tilde` (the cosh
formula extends to real order). That is the conjectural regime: nothing here
asserts infinite divisibility there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NotACompletelyMonotoneQuadratic, PolynomialCapError
from .poly import Polynomial, log_cosh

MAX_EXACT_M = 60


class Variant(str, Enum):
    K = "K"
    K_TILDE = "K_tilde"


@dataclass(frozen=True)
class FactorizedLaw:
    """``[N^2/2 if has_half_gaussian] + sum_k exp_scales[k] * e_k``.

    ``N`` is standard normal and the ``e_k`` are independent unit-mean
    exponentials. Scales are stored in decreasing order.
    """

    m: int
    variant: Variant
    has_half_gaussian: bool
    exp_scales: tuple[float, ...]

    @property
    def n_components(self) -> int:
        return len(self.exp_scales)

    @property
    def mean(self) -> float:
        return 0.5 * self.has_half_gaussian + sum(self.exp_scales)


def _check_x(x: float) -> None:
    if not x >= 0.0:
        raise DomainError(f"x must be >= 0, got {x!r}")


def _check_m(m: float) -> None:
    if not m > 0:
        raise DomainError(f"m must be > 0, got {m!r}")


def _check_int_m(m: int) -> int:
    if isinstance(m, float) and m.is_integer():
        m = int(m)
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    return m


def g_plus_minus(x: float) -> tuple[float, float]:
    """``(sqrt(1+x) + sqrt(x), sqrt(1+x) - sqrt(x))``.

    The second member is formed as ``1/G+`` since the product is exactly one.
    """
    _check_x(x)
    gp = math.sqrt(1.0 + x) + math.sqrt(x)
    return gp, 1.0 / gp


def log_phi(m: float, x: float) -> float:
    """``log phi_m(x) = -log T_m(sqrt(1+x))``.

    Uses ``arccosh(sqrt(1+x)) = asinh(sqrt(x))``, which keeps full relative
    accuracy for small ``x``.
    """
    _check_m(m)
    _check_x(x)
    return -log_cosh(m * math.asinh(math.sqrt(x)))


def phi(m: float, x: float) -> float:
    return math.exp(log_phi(m, x))


def log_phi_tilde(m: float, x: float) -> float:
    return log_phi(m, x) - 0.5 * math.log1p(x)


def phi_tilde(m: float, x: float) -> float:
    """``phi_m(x) / sqrt(1 + x)``, the Gauss-Laplace transform of the exit time."""
    return math.exp(log_phi_tilde(m, x))


def m_from_c(c: float) -> float:
    if not c > 0:
        raise DomainError(f"cone half-angle must be > 0, got {c!r}")
    return math.pi / (2.0 * c)


def c_from_m(m: float) -> float:
    _check_m(m)
    return math.pi / (2.0 * m)


def pq_polynomial(m: int) -> Polynomial:
    """``P_n`` (``m = 2n+1``) or ``Q_n`` (``m = 2n``) with exact integer coefficients.

    P_n(x) = sum_k C(2n+1, 2k+1) (1+x)^k x^(n-k)
    Q_n(x) = sum_k C(2n,   2k)   (1+x)^k x^(n-k)
    """
    m = _check_int_m(m)
    if m > MAX_EXACT_M:
        raise PolynomialCapError(f"m={m} exceeds the exact expansion cap {MAX_EXACT_M}")
    n, odd = divmod(m, 2)
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        b = math.comb(2 * n + 1, 2 * k + 1) if odd else math.comb(2 * n, 2 * k)
        for j in range(k + 1):
            coeffs[n - k + j] += b * math.comb(k, j)
    return Polynomial(tuple(coeffs))


def spectral_scales(m: int) -> tuple[float, ...]:
    """Exponential scales ``1 / sin^2(pi (2k-1) / (2m))``, ``k = 1..floor(m/2)``.

    These are ``a_k`` for odd ``m`` and ``b_k`` for even ``m``; ``-1/scale``
    runs over the roots of :func:`pq_polynomial`. Decreasing order.
    """
    m = _check_int_m(m)
    n = m // 2
    return tuple(1.0 / math.sin(0.5 * math.pi * (2 * k - 1) / m) ** 2 for k in range(1, n + 1))


def factorize(m: int, variant: Variant | str = Variant.K) -> FactorizedLaw:
    """The law ``K`` (transform ``phi_m``) or ``K~ = N^2/2 + K`` (transform ``phi_tilde_m``).

    For odd ``m`` the two half chi-squares of ``K~`` merge into one unit
    exponential, which is appended after the ``a_k`` to keep the scales
    decreasing.
    """
    m = _check_int_m(m)
    variant = Variant(variant)
    scales = spectral_scales(m)
    odd = m % 2 == 1
    if variant is Variant.K:
        return FactorizedLaw(m, variant, odd, scales)
    if odd:
        return FactorizedLaw(m, variant, False, scales + (1.0,))
    return FactorizedLaw(m, variant, True, scales)


def laplace_of_law(law: FactorizedLaw, x: float) -> float:
    """``E[exp(-x K)] = (1+x)^(-1/2 [gaussian]) * prod 1/(1 + c_k x)``."""
    _check_x(x)
    val = 1.0
    for c in law.exp_scales:
        val /= 1.0 + c * x
    if law.has_half_gaussian:
        val /= math.sqrt(1.0 + x)
    return val


def quadratic_factor(u: float, v: float) -> tuple[float, float]:
    """Split ``1 + u x + v x^2 = (1 + a x)(1 + b x)`` with ``0 < a <= b``.

    Requires ``u > 0``, ``v > 0`` and ``u^2 - 4v >= 0``; otherwise
    ``1/(1 + u x + v x^2)`` is not the transform of ``a e + b e'`` and
    :class:`NotACompletelyMonotoneQuadratic` is raised.
    """
    if not (u > 0 and v > 0):
        raise NotACompletelyMonotoneQuadratic(f"need u, v > 0 (u={u!r}, v={v!r})")
    disc = u * u - 4.0 * v
    if disc < 0:
        raise NotACompletelyMonotoneQuadratic(f"discriminant {disc!r} < 0")
    b = 0.5 * (u + math.sqrt(disc))
    # a = (u - sqrt(disc))/2 computed as v/b avoids cancellation when v << u^2
    return v / b, b


def closed_form_roots(m: int) -> list[float]:
    """``sorted(-1/c for c in spectral_scales(m))``."""
    return sorted(-1.0 / c for c in spectral_scales(m))

