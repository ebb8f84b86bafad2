import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cone_exit.errors import DomainError, NotACompletelyMonotoneQuadratic, PolynomialCapError
from cone_exit.laplace import (FactorizedLaw, Variant, c_from_m, closed_form_roots, factorize,
                               g_plus_minus, laplace_of_law, log_phi, m_from_c, phi, phi_tilde,
                               pq_polynomial, quadratic_factor, spectral_scales)
from cone_exit.poly import eval_polynomial, real_roots

X_GRID = (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0)


def _pq_oracle(m):
    """Expand the binomial sum with Fractions, one power of (1+x) at a time."""
    n = m // 2
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        weight = comb(m, 2 * k + 1) if m % 2 else comb(m, 2 * k)
        # (1+x)^k x^(n-k)
        for j in range(k + 1):
            coeffs[n - k + j] += weight * comb(k, j)
    return [int(c) for c in coeffs]


def _recurrence_T(m, y):
    t0, t1 = 1.0, y
    if m == 0:
        return t0
    for _ in range(m - 1):
        t0, t1 = t1, 2 * y * t1 - t0
    return t1


# -- G_+- -------------------------------------------------------------------


def test_g_plus_minus_values():
    assert g_plus_minus(0.0) == (1.0, 1.0)
    gp, gm = g_plus_minus(1.0)
    assert gp == pytest.approx(1 + math.sqrt(2), rel=1e-15)
    assert gm == pytest.approx(math.sqrt(2) - 1, rel=1e-15)
    gp, gm = g_plus_minus(5.0)
    assert gp * gm == pytest.approx(1.0, rel=1e-15)


def test_g_minus_no_cancellation():
    x = 1e14
    _, gm = g_plus_minus(x)
    # sqrt(1+x) - sqrt(x) = 1/(2 sqrt(x)) (1 - 1/(4x) + ...)
    assert gm == pytest.approx(0.5 / math.sqrt(x), rel=1e-12)


def test_g_plus_minus_domain():
    with pytest.raises(DomainError):
        g_plus_minus(-1e-3)


# -- phi, phi_tilde -------------------------------------------------------------


def test_phi_examples():
    for m in (0.5, 1, 2, 7, 33.3):
        assert phi(m, 0.0) == 1.0
        assert phi_tilde(m, 0.0) == 1.0
    assert phi(1, 3.0) == pytest.approx(0.5, rel=1e-15)
    assert phi(2, 1.0) == pytest.approx(1 / 3, rel=1e-15)
    assert phi_tilde(1, 1.0) == pytest.approx(0.5, abs=1e-12)
    assert phi_tilde(2, 1.0) == pytest.approx(1 / (3 * math.sqrt(2)), abs=1e-12)


def test_phi_tilde_three():
    # sqrt(1+x) P_1(x) = sqrt(1+x) (1 + 4x), so phi_tilde_3 = 1 / ((1+x)(1+4x))
    for x in X_GRID:
        assert phi_tilde(3, x) == pytest.approx(1 / ((1 + x) * (1 + 4 * x)), rel=1e-13)
    assert phi_tilde(3, 1.0) == pytest.approx(0.1, rel=1e-14)
    assert phi(3, 1.0) == pytest.approx(1 / (5 * math.sqrt(2)), rel=1e-14)


def test_phi_matches_g_form_for_integer_m():
    for m in range(1, 40):
        for x in X_GRID:
            gp, gm = g_plus_minus(x)
            direct = 2.0 / (gp**m + gm**m)
            assert phi(m, x) == pytest.approx(direct, rel=1e-12)


def test_phi_chebyshev_identity_against_recurrence():
    for m in range(1, 61):
        for x in X_GRID:
            y = math.sqrt(1 + x)
            t = _recurrence_T(m, y)
            if math.isfinite(t):
                assert phi(m, x) * t == pytest.approx(1.0, rel=1e-11)


def test_phi_huge_order_stays_positive():
    assert 0.0 <= phi(1e6, 1.0) < 1e-300
    assert math.isfinite(log_phi(1e6, 1.0))


def test_phi_domain():
    with pytest.raises(DomainError):
        phi(1, -1.0)
    with pytest.raises(DomainError):
        phi(0, 1.0)
    with pytest.raises(DomainError):
        phi(-2, 1.0)


def test_m_c_dictionary():
    assert m_from_c(math.pi / 6) == pytest.approx(3.0, rel=1e-15)
    assert c_from_m(2) == pytest.approx(math.pi / 4, rel=1e-15)
    with pytest.raises(DomainError):
        m_from_c(0.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 50.0), st.floats(0.0, 1e3), st.floats(1e-6, 1e3))
def test_phi_monotone_in_x(m, x, dx):
    assert phi(m, x + dx) < phi(m, x) or phi(m, x) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 50.0), st.floats(1e-3, 1e3), st.floats(1e-3, 10.0))
def test_phi_monotone_in_m(m, x, dm):
    assert phi(m + dm, x) < phi(m, x) or phi(m, x) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 60.0), st.floats(0.0, 1e4))
def test_phi_in_unit_interval(m, x):
    v = phi(m, x)
    assert 0.0 <= v <= 1.0
    assert phi_tilde(m, x) <= v


# -- P_n / Q_n -------------------------------------------------------------------


def test_pq_examples():
    assert pq_polynomial(1).coeffs == (1,)
    assert pq_polynomial(2).coeffs == (1, 2)
    assert pq_polynomial(3).coeffs == (1, 4)
    assert pq_polynomial(4).coeffs == (1, 8, 8)


def test_pq_matches_oracle_exactly():
    for m in range(1, 61):
        p = pq_polynomial(m)
        assert list(p.coeffs) == _pq_oracle(m)
        assert all(isinstance(c, int) and c > 0 for c in p.coeffs)
        assert p.coeffs[0] == 1
        assert p.degree == m // 2


def test_pq_leading_coefficient():
    # T_m(y) has leading coefficient 2^(m-1)
    for m in range(1, 61):
        assert pq_polynomial(m).leading == 2 ** (m - 1)


def test_pq_cap():
    with pytest.raises(PolynomialCapError):
        pq_polynomial(61)
    with pytest.raises(DomainError):
        pq_polynomial(0)


def test_pq_is_chebyshev():
    for m in range(1, 30):
        p = pq_polynomial(m)
        for x in (0.0, 0.3, 2.0):
            y = math.sqrt(1 + x)
            d = eval_polynomial(p, x) * (y if m % 2 else 1.0)
            assert d == pytest.approx(_recurrence_T(m, y), rel=1e-12)


def test_odd_parity_split():
    for n in range(0, 25):
        m = 2 * n + 1
        p = pq_polynomial(m)
        for x in X_GRID:
            assert phi(m, x) * math.sqrt(1 + x) * eval_polynomial(p, x) == pytest.approx(
                1.0, rel=1e-10)


# -- spectral scales ------------------------------------------------------------


def test_spectral_examples():
    assert spectral_scales(1) == ()
    assert spectral_scales(2) == pytest.approx([2.0], rel=1e-15)
    assert spectral_scales(3) == pytest.approx([4.0], rel=1e-15)
    assert spectral_scales(4) == pytest.approx([4 + 2 * math.sqrt(2), 4 - 2 * math.sqrt(2)],
                                               rel=1e-14)


def test_spectral_ordering_and_bounds():
    for m in range(1, 61):
        s = spectral_scales(m)
        assert len(s) == m // 2
        assert all(a > b for a, b in zip(s, s[1:]))
        assert all(c >= 1.0 for c in s)


def test_polynomial_product_agreement():
    for m in range(1, 61):
        p = pq_polynomial(m)
        for x in X_GRID:
            prod = math.prod(1.0 / (1.0 + c * x) for c in spectral_scales(m))
            assert eval_polynomial(p, x) * prod == pytest.approx(1.0, rel=1e-10)


def test_root_correspondence():
    for m in range(2, 41):
        roots = real_roots(pq_polynomial(m))
        assert roots == pytest.approx(sorted(-1.0 / c for c in spectral_scales(m)), abs=1e-9)
        assert roots == pytest.approx(closed_form_roots(m), abs=1e-12)


# -- factorized laws -------------------------------------------------------------


def test_factorize_examples():
    law = factorize(1, "K_tilde")
    assert not law.has_half_gaussian and law.exp_scales == (1.0,)
    law = factorize(2, Variant.K_TILDE)
    assert law.has_half_gaussian and law.exp_scales == pytest.approx((2.0,))
    law = factorize(3, "K")
    assert law.has_half_gaussian and law.exp_scales == pytest.approx((4.0,))
    law = factorize(1, "K")
    assert law.has_half_gaussian and law.exp_scales == ()


def test_factorize_invariants():
    for m in range(1, 61):
        n = m // 2
        k = factorize(m, "K")
        kt = factorize(m, "K_tilde")
        assert k.has_half_gaussian == (m % 2 == 1)
        assert kt.has_half_gaussian == (m % 2 == 0)
        assert len(k.exp_scales) == n
        assert len(kt.exp_scales) == n + (m % 2)
        for law in (k, kt):
            s = law.exp_scales
            assert all(c >= 1.0 for c in s)
            assert all(a > b for a, b in zip(s, s[1:]))
        if m % 2:
            # the two half-Gaussians merge into a unit exponential
            assert kt.exp_scales[-1] == 1.0
            assert kt.exp_scales[:-1] == k.exp_scales


def test_factorized_law_mean():
    # E[K~] = -d/dx log phi_tilde at 0 = (m^2 + 1)/2
    for m in range(1, 20):
        assert factorize(m, "K_tilde").mean == pytest.approx((m * m + 1) / 2, rel=1e-12)
        assert factorize(m, "K").mean == pytest.approx(m * m / 2, rel=1e-12)


def test_laplace_of_law_examples():
    assert laplace_of_law(factorize(4, "K"), 1.0) == pytest.approx(1 / 17, rel=1e-14)
    assert laplace_of_law(factorize(1, "K"), 3.0) == pytest.approx(0.5, rel=1e-15)
    for m in (1, 2, 9):
        assert laplace_of_law(factorize(m, "K_tilde"), 0.0) == 1.0


def test_laplace_of_law_matches_closed_forms():
    for m in range(1, 61):
        k = factorize(m, "K")
        kt = factorize(m, "K_tilde")
        for x in X_GRID:
            assert laplace_of_law(k, x) == pytest.approx(phi(m, x), rel=1e-10)
            assert laplace_of_law(kt, x) == pytest.approx(phi_tilde(m, x), rel=1e-10)


def test_factorize_rejects_bad_input():
    with pytest.raises(DomainError):
        factorize(0)
    with pytest.raises(DomainError):
        factorize(2.5)
    with pytest.raises(ValueError):
        factorize(3, "bogus")
    assert isinstance(factorize(3), FactorizedLaw)


# -- quadratic factor -------------------------------------------------------------


def test_quadratic_factor_examples():
    a, b = quadratic_factor(8.0, 8.0)
    assert (a, b) == pytest.approx((4 - 2 * math.sqrt(2), 4 + 2 * math.sqrt(2)), rel=1e-14)
    assert quadratic_factor(2.0, 1.0) == (1.0, 1.0)
    with pytest.raises(NotACompletelyMonotoneQuadratic):
        quadratic_factor(1.0, 1.0)
    with pytest.raises(NotACompletelyMonotoneQuadratic):
        quadratic_factor(-3.0, 2.0)
    with pytest.raises(NotACompletelyMonotoneQuadratic):
        quadratic_factor(3.0, -2.0)


def test_quadratic_factor_matches_scales():
    a, b = quadratic_factor(8.0, 8.0)
    assert (b, a) == pytest.approx(spectral_scales(4), rel=1e-14)


# a and b on a dyadic grid so that u = a + b and v = a b are exact
_dyadic = st.integers(1, 100 * 64).map(lambda k: k / 64)


@settings(max_examples=300, deadline=None)
@given(_dyadic, _dyadic)
def test_quadratic_factor_roundtrip(p, q):
    a, b = min(p, q), max(p, q)
    ra, rb = quadratic_factor(a + b, a * b)
    assert ra <= rb
    # u, v and the discriminant are exact on this grid, only the square root rounds
    assert rb == pytest.approx(b, rel=1e-12)
    assert ra == pytest.approx(a, rel=1e-12)
    for x in (0.1, 1.0, 10.0):
        lhs = 1.0 / (1.0 + (a + b) * x + a * b * x * x)
        assert lhs == pytest.approx(1.0 / ((1 + ra * x) * (1 + rb * x)), rel=1e-12)
