import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cone_exit.errors import DomainError, RootFindingError
from cone_exit.poly import (Polynomial, arccosh, chebyshev_T, eval_polynomial, from_roots,
                            log_chebyshev_T, log_cosh, real_roots)


def test_polynomial_strips_trailing_zeros():
    p = Polynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert p.leading == 2


def test_horner_matches_numpy():
    p = Polynomial((3.0, -1.0, 0.5, 2.0))
    for x in (-2.0, 0.0, 0.3, 7.0):
        assert eval_polynomial(p, x) == pytest.approx(np.polyval(p.coeffs[::-1], x), rel=1e-15)


def test_derivative():
    assert Polynomial((1, 4, 3)).derivative().coeffs == (4, 6)


def test_from_roots_round_trip():
    p = from_roots([-1.0, -2.0, -3.0])
    assert p.coeffs == (6.0, 11.0, 6.0, 1.0)
    assert real_roots(p) == pytest.approx([-3.0, -2.0, -1.0], abs=1e-14)


def test_arccosh_domain():
    assert arccosh(1.0) == 0.0
    assert arccosh(3.0) == pytest.approx(math.acosh(3.0), rel=1e-15)
    with pytest.raises(DomainError):
        arccosh(0.999)


def test_arccosh_near_one_keeps_precision():
    d = 2.0 ** -40  # exactly representable offset
    # acosh(1 + d) = sqrt(2d) (1 - d/12 + ...)
    assert arccosh(1.0 + d) == pytest.approx(math.sqrt(2 * d) * (1 - d / 12), rel=1e-15)


def test_log_cosh_large_argument():
    assert log_cosh(1000.0) == pytest.approx(1000.0 - math.log(2.0), rel=1e-15)
    assert log_cosh(0.0) == 0.0
    assert log_cosh(-3.0) == log_cosh(3.0)
    assert log_cosh(-1000.0) == log_cosh(1000.0)


def test_chebyshev_integer_orders():
    # T_m(y) from the three-term recurrence
    for y in (1.0, 1.3, 2.0, 5.0):
        t0, t1 = 1.0, y
        for m in range(2, 15):
            t0, t1 = t1, 2 * y * t1 - t0
            assert chebyshev_T(m, y) == pytest.approx(t1, rel=1e-12)


def test_chebyshev_overflow_is_infinite_but_log_finite():
    assert chebyshev_T(2000, 10.0) == math.inf
    assert math.isfinite(log_chebyshev_T(2000, 10.0))


def test_real_roots_clustered():
    # (x + 10^6 - 1)(x + 10^6)(x + 10^6 + 1) with exact integer coefficients
    r = 10**6
    p = Polynomial((r**3 - r, 3 * r**2 - 1, 3 * r, 1))
    assert real_roots(p) == pytest.approx([-r - 1.0, -r, -r + 1.0], abs=1e-9)


def test_real_roots_root_on_dyadic_point():
    # the isolation bisects at 0 and at powers of two
    assert real_roots(from_roots([-2.0, 0.0, 4.0])) == [-2.0, 0.0, 4.0]


def test_real_roots_rejects_complex_roots():
    with pytest.raises(RootFindingError):
        real_roots(Polynomial((1, 0, 1)))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6, unique=True))
def test_real_roots_of_integer_products(roots):
    p = from_roots([float(r) for r in roots])
    assert real_roots(p) == pytest.approx(sorted(roots), abs=1e-9)
