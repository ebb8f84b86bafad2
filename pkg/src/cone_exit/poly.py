"""Dense polynomials, first-kind Chebyshev evaluation and exact real-root isolation.

Only the ``y >= 1`` branch of ``T_m`` is implemented: every call site evaluates
it at ``sqrt(1 + x)`` with ``x >= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, RootFindingError

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial with coefficients in ascending degree order.

    ``coeffs[j]`` multiplies ``x**j``. Trailing zeros are stripped on
    construction; the zero polynomial is ``(0,)``. Integer coefficients are
    kept as Python ints so exact expansions compare exactly.
    """

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        if not c:
            c = [0]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x: float) -> float:
        return eval_polynomial(self, x)

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(j * c for j, c in enumerate(self.coeffs))[1:] or (0,))

    def __len__(self) -> int:
        return len(self.coeffs)


def eval_polynomial(p: Polynomial, x: float) -> float:
    """Horner evaluation of ``sum(coeffs[j] * x**j)``."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def from_roots(roots: Sequence[float], lead: float = 1.0) -> Polynomial:
    """Expand ``lead * prod(x - r)`` into ascending coefficients."""
    coeffs = [float(lead)]
    for r in roots:
        nxt = [0.0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= r * c
        coeffs = nxt
    return Polynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# Chebyshev polynomials of the first kind, y >= 1 branch


def arccosh(y: float) -> float:
    """``log(y + sqrt(y^2 - 1))`` evaluated without cancellation near ``y = 1``."""
    if not y >= 1.0:
        raise DomainError(f"arccosh needs y >= 1, got {y!r}")
    d = y - 1.0
    return math.log1p(d + math.sqrt(d) * math.sqrt(y + 1.0))


def log_cosh(u: float) -> float:
    """``log(cosh(u))`` without overflow."""
    u = abs(u)
    if u == 0.0:
        return 0.0
    return u + math.log1p(math.exp(-2.0 * u)) - LOG2


def chebyshev_T(m: float, y: float) -> float:
    """``T_m(y) = cosh(m * arccosh(y))``; real ``m >= 0`` allowed.

    Returns ``inf`` once the value leaves the double range.
    """
    if m < 0:
        raise DomainError(f"order must be nonnegative, got {m!r}")
    u = m * arccosh(y)
    try:
        return math.cosh(u)
    except OverflowError:
        return math.inf


def log_chebyshev_T(m: float, y: float) -> float:
    """``log T_m(y)``, finite for any finite ``m`` and ``y``."""
    if m < 0:
        raise DomainError(f"order must be nonnegative, got {m!r}")
    return log_cosh(m * arccosh(y))


# ---------------------------------------------------------------------------
# Exact real-root isolation


def _to_integer_coeffs(coeffs: Sequence) -> list[int]:
    """Positive rescaling of rational (or float) coefficients to coprime ints."""
    fr = [Fraction(c) for c in coeffs]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _poly_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    """Remainder of ascending-order polynomial division."""
    r = list(num)
    dn = len(den) - 1
    lead = den[-1]
    while len(r) - 1 >= dn and any(r):
        shift = len(r) - 1 - dn
        q = r[-1] / lead
        for j in range(dn + 1):
            r[shift + j] -= q * den[j]
        r.pop()
        while len(r) > 1 and r[-1] == 0:
            r.pop()
    while len(r) > 1 and r[-1] == 0:
        r.pop()
    return r


def _sturm_chain(ints: list[int]) -> list[list[int]]:
    p0 = [Fraction(c) for c in ints]
    p1 = [Fraction(j * c) for j, c in enumerate(ints)][1:]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append([-c for c in r])
    return [_to_integer_coeffs(q) for q in chain]


def _sign_at(ints: list[int], num: int, den: int) -> int:
    """Exact sign of the polynomial at ``num/den`` (``den > 0``)."""
    n = len(ints) - 1
    acc = ints[n]
    dp = 1
    for j in range(n - 1, -1, -1):
        dp *= den
        acc = acc * num + ints[j] * dp
    return (acc > 0) - (acc < 0)


def _variations(chain: list[list[int]], x: float) -> int:
    num, den = x.as_integer_ratio()
    last = 0
    v = 0
    for q in chain:
        s = _sign_at(q, num, den)
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def real_roots(p: Polynomial, tol: float = 1e-15, max_iter: int = 4000) -> list[float]:
    """Sorted real roots of a polynomial whose roots are all real and simple.

    Isolation uses a Sturm chain evaluated in exact integer arithmetic at
    dyadic points, refinement uses bisection with exact signs, so the result
    is accurate to the bisection width even when float Horner evaluation of
    ``p`` is badly conditioned. Raises :class:`RootFindingError` if the Sturm
    count disagrees with the degree (complex or repeated roots) or the
    iteration cap is hit.
    """
    n = p.degree
    if n <= 0:
        return []
    if n == 1:
        c0, c1 = p.coeffs
        return [float(-Fraction(c0) / Fraction(c1))]
    ints = _to_integer_coeffs(p.coeffs)
    chain = _sturm_chain(ints)
    # Cauchy bound, rounded up to a power of two so the endpoints are exact
    lead = abs(Fraction(ints[-1]))
    bound = 1 + max(abs(Fraction(c)) / lead for c in ints[:-1])
    B = 2.0 ** math.ceil(math.log2(float(bound)) + 1)
    v_lo, v_hi = _variations(chain, -B), _variations(chain, B)
    if v_lo - v_hi != n:
        raise RootFindingError(
            f"Sturm count {v_lo - v_hi} != degree {n}: roots not all real and simple")

    isolated = []
    stack = [(-B, B, v_lo, v_hi)]
    it = 0
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            isolated.append((a, b))
            continue
        it += 1
        if it > max_iter:
            raise RootFindingError("root isolation did not converge")
        mid = 0.5 * (a + b)
        if mid in (a, b):
            raise RootFindingError("roots closer than double resolution")
        vm = _variations(chain, mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))

    # each isolating interval (a, b] holds exactly one simple root
    roots = []
    for a, b in isolated:
        sb = _sign_at(ints, *b.as_integer_ratio())
        if sb == 0:
            roots.append(b)
            continue
        sa = -sb  # the sign on (a, root), whatever happens at a itself
        for _ in range(max_iter):
            mid = 0.5 * (a + b)
            if mid in (a, b) or b - a <= tol * max(1.0, abs(a), abs(b)):
                break
            s = _sign_at(ints, *mid.as_integer_ratio())
            if s == 0:
                a = b = mid
                break
            if s == sa:
                a = mid
            else:
                b = mid
        else:
            raise RootFindingError("bisection did not converge")
        roots.append(0.5 * (a + b))
    return sorted(roots)
