import math

import numpy as np
import pytest

from poncelet.closure import ClosesAt, tangent_pair_condition
from poncelet.errors import DegreeOutOfRange
from poncelet.oracle import (
    PELL_WEIGHT,
    alpha_set_bridge,
    chebyshev_Q,
    chebyshev_T,
    pell_certificate,
    pell_failure_at_alpha_one,
    trim,
)


class TestChebyshev:
    @pytest.mark.parametrize(
        "n, coeffs",
        [(0, [1]), (1, [0, 1]), (2, [-1, 0, 2]), (3, [0, -3, 0, 4])],
    )
    def test_first_kind(self, n, coeffs):
        np.testing.assert_allclose(chebyshev_T(n).coef, coeffs)

    @pytest.mark.parametrize("n, coeffs", [(1, [1]), (2, [0, 2]), (3, [-1, 0, 4])])
    def test_second_kind(self, n, coeffs):
        np.testing.assert_allclose(chebyshev_Q(n).coef, coeffs)

    def test_negative_degree(self):
        with pytest.raises(DegreeOutOfRange):
            chebyshev_T(-1)

    @pytest.mark.parametrize("n", range(0, 33))
    def test_recursion_matches_cosine(self, n):
        phi = np.linspace(0, math.pi, 1001)
        t = chebyshev_T(n)
        # monomial evaluation loses accuracy in proportion to the coefficient mass
        tol = max(1e-9, 1e-15 * np.sum(np.abs(t.coef)))
        assert np.max(np.abs(t(np.cos(phi)) - np.cos(n * phi))) < tol

    @pytest.mark.parametrize("n", range(0, 33))
    def test_bounded_on_the_interval(self, n):
        x = np.linspace(-1, 1, 2001)
        t = chebyshev_T(n)
        assert np.max(np.abs(t(x))) <= 1 + max(1e-12, 1e-15 * np.sum(np.abs(t.coef)))

    def test_trim(self):
        p = trim(np.polynomial.Polynomial([1.0, 2.0, 1e-15, 1e-14]))
        assert list(p.coef) == [1.0, 2.0]


class TestPell:
    def test_quadratic_case(self):
        cert = pell_certificate(2)
        np.testing.assert_allclose(cert.R.coef, [1, 8, 8], atol=1e-12)
        assert cert.max_residual < 1e-12
        assert cert.alpha_roots == pytest.approx((0.5,))

    def test_cubic_case_roots(self):
        cert = pell_certificate(3)
        assert cert.alpha_roots == pytest.approx((0.25, 0.75))

    @pytest.mark.parametrize("n", range(2, 33))
    def test_endpoints_are_exact(self, n):
        cert = pell_certificate(n)
        for x in (0.0, -1.0):
            lhs = cert.R(x) ** 2 - PELL_WEIGHT(x) * cert.S(x) ** 2
            assert abs(lhs - 1) < 1e-12 * max(1.0, abs(cert.R(x)) ** 2)
        assert cert.R(0.0) == pytest.approx(1.0)
        assert abs(cert.R(-1.0)) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_residual_small(self, n):
        assert pell_certificate(n).max_residual < 1e-6

    @pytest.mark.parametrize("n", range(2, 33))
    def test_roots_closed_form(self, n):
        expected = sorted((1 - math.cos(k * math.pi / n)) / 2 for k in range(1, n))
        assert pell_certificate(n).alpha_roots == pytest.approx(expected, abs=1e-10)

    def test_partner_is_twice_the_second_kind(self):
        cert = pell_certificate(5)
        q = chebyshev_Q(5)(np.polynomial.Polynomial([1.0, 2.0]))
        np.testing.assert_allclose(cert.S.coef, 2 * q.coef, rtol=1e-9)

    @pytest.mark.parametrize("n", [1, 33])
    def test_degree_range(self, n):
        with pytest.raises(DegreeOutOfRange):
            pell_certificate(n)


class TestBridge:
    @pytest.mark.parametrize("n", range(3, 21))
    def test_match(self, n):
        rep = alpha_set_bridge(n)
        assert rep.match and rep.max_error < 1e-12

    def test_small_cases(self):
        assert alpha_set_bridge(3).theorem_set == pytest.approx((0.25,))
        assert alpha_set_bridge(4).theorem_set == pytest.approx((0.5,))
        five = alpha_set_bridge(5)
        assert five.theorem_set == pytest.approx(sorted([math.cos(math.pi / 5) ** 2, math.cos(2 * math.pi / 5) ** 2]))

    @pytest.mark.parametrize("n", range(3, 21))
    def test_pell_roots_predict_closure(self, n):
        # roots are sin^2(k pi / 2n) = cos^2((n - k) pi / 2n), periods divide 2n
        for alpha in pell_certificate(n).alpha_roots:
            v = tangent_pair_condition(alpha, 1, 0, 64)
            assert isinstance(v, ClosesAt) and (2 * n) % v.n == 0
        for alpha in alpha_set_bridge(n).theorem_set:
            v = tangent_pair_condition(alpha, 1, 0, 64)
            assert isinstance(v, ClosesAt) and n % v.n == 0


class TestAlphaOne:
    @pytest.mark.parametrize("n", range(2, 13))
    def test_witness(self, n):
        w = pell_failure_at_alpha_one(n)
        assert w.xi < -1 and w.lhs < 1
        assert w.r_at_minus_one == pytest.approx(-1.0)
        assert abs(w.r_prime_at_minus_one) < 1e-6

    def test_standard_family_has_nonzero_slope(self):
        # T_2(2x + 1) = 8x^2 + 8x + 1, so R'(-1) = -8
        assert pell_failure_at_alpha_one(2).standard_r_prime == pytest.approx(-8.0)

    def test_degree_guard(self):
        with pytest.raises(DegreeOutOfRange):
            pell_failure_at_alpha_one(1)
