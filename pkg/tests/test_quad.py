"""Tests for quadrature rules, lattice sums, Gram assembly and zero tables."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bivarortho import bivariate, quad, radial


class TestGolubWelsch:
    def test_laguerre_moments(self):
        # moments of x^alpha e^-x dx are Gamma(alpha + k + 1)
        rule = quad.golub_welsch(radial.laguerre(0.5), 1.0, 6)
        for k in range(rule.exactness + 1):
            mono = np.zeros(k + 1)
            mono[k] = 1.0
            assert_allclose(rule.integrate_poly(mono), math.gamma(2.5 + k), rtol=1e-11)

    def test_jacobi_moments(self):
        # moments of x^(alpha+gamma) (1-x)^beta dx on (0,1) are Beta integrals
        b, g, alpha = 0.7, 0.4, 1.0
        rule = quad.golub_welsch(radial.shifted_jacobi(b, g), alpha, 5)
        for k in range(rule.exactness + 1):
            mono = np.zeros(k + 1)
            mono[k] = 1.0
            a_exp = alpha + g + k
            ref = math.gamma(a_exp + 1) * math.gamma(b + 1) / math.gamma(a_exp + b + 2)
            assert_allclose(rule.integrate_poly(mono), ref, rtol=1e-11)

    def test_weights_positive_nodes_sorted(self):
        rule = quad.golub_welsch(radial.laguerre(0.0), 0.0, 8)
        assert np.all(rule.weights > 0)
        assert np.all(np.diff(rule.nodes) > 0)
        assert rule.exactness == 15

    def test_rejects_q_family(self):
        with pytest.raises(ValueError):
            quad.golub_welsch(radial.wall(0.5, 0.5), 0.0, 4)

    def test_rejects_empty_rule(self):
        with pytest.raises(ValueError):
            quad.golub_welsch(radial.laguerre(0.0), 0.0, 0)


class TestAngular:
    def test_exact_selection(self):
        assert quad.angular_integral(3, 3) == 1.0
        assert quad.angular_integral(3, 1) == 0.0

    @pytest.mark.parametrize("j,k", [(0, 0), (2, 2), (3, 1), (5, 0)])
    def test_trapezoid_crosscheck(self, j, k):
        val = quad.angular_integral_trapezoid(j, k)
        assert_allclose(val.real, quad.angular_integral(j, k), atol=1e-13)
        assert abs(val.imag) < 1e-13


class TestQLatticeSum:
    @pytest.mark.parametrize(
        "fam",
        [radial.wall(0.5, 0.5), radial.little_q_jacobi(0.5, 0.7, 0.5)],
        ids=["wall", "qjacobi"],
    )
    def test_mass_matches_closed_form(self, fam):
        total = quad.q_lattice_sum(fam, 1.0, lambda x: 1.0)
        assert_allclose(total, radial.measure_mass(fam, 1.0), rtol=1e-12)

    def test_bilateral_mass(self):
        fam = radial.q_laguerre(0.5, 0.5, c=1.0)
        total = quad.q_lattice_sum(fam, 1.0, lambda x: 1.0)
        assert_allclose(total, radial.measure_mass(fam, 1.0), rtol=1e-12)

    def test_unilateral_brute_force(self):
        # independently coded lattice sum for the wall weight
        fam = radial.wall(0.3, 0.4)
        q, a = fam.q, 1.0 + fam.beta

        def integrand(x):
            return x ** 2 - 0.5 * x

        ref = 0.0
        from bivarortho.qcalc import qpochhammer

        for k in range(200):
            x = q ** k
            w = q ** ((a + 1) * k) * qpochhammer(q ** (k + 1), q)
            ref += w * integrand(x)
        val = quad.q_lattice_sum(fam, 1.0, integrand)
        assert_allclose(val, ref, rtol=1e-13)

    def test_unilateral_needs_integrable_exponent(self):
        with pytest.raises(ValueError):
            quad.q_lattice_sum(radial.wall(0.0, 0.5), -1.5, lambda x: 1.0)

    def test_rejects_continuous_family(self):
        with pytest.raises(ValueError):
            quad.q_lattice_sum(radial.laguerre(0.0), 0.0, lambda x: 1.0)

    def test_longdouble_path(self):
        fam = radial.wall(0.5, 0.3)
        v64 = quad.q_lattice_sum(fam, 0.0, lambda x: x ** 3)
        v80 = quad.q_lattice_sum(
            fam, 0.0, lambda x: x ** 3, tail_tol=1e-19, dtype=np.longdouble
        )
        assert_allclose(float(v80), v64, rtol=1e-12)


class TestGram:
    def test_plane_family_diagonal(self):
        res = quad.gram(bivariate.Z(0.5), 3)
        assert res.passed
        assert res.max_offdiag < 1e-11
        for (m, n) in res.indices:
            ref = math.pi * math.gamma(0.5 + max(m, n) + 1) / math.factorial(min(m, n))
            assert_allclose(res.diag_ref[(m, n)], ref, rtol=1e-13)
            assert_allclose(res.entries[((m, n), (m, n))], ref, rtol=1e-10)

    def test_rescaled_plane_family(self):
        # diagonal carries the square of the n! rescaling
        res = quad.gram(bivariate.H(), 2)
        assert res.passed
        for (m, n) in res.indices:
            ref = math.pi * math.factorial(max(m, n)) * math.factorial(min(m, n))
            assert_allclose(res.diag_ref[(m, n)], ref, rtol=1e-13)

    def test_disc_family(self):
        res = quad.gram(bivariate.M(0.5, 2.0), 3)
        assert res.passed

    @pytest.mark.parametrize("q", [0.3, 0.8])
    def test_q_families(self, q):
        for fam in (
            bivariate.ZQ(0.5, q),
            bivariate.WALL(0.5, q),
            bivariate.MQ(0.5, 0.5, q),
        ):
            res = quad.gram(fam, 2, offdiag_tol=1e-9, diag_rel_tol=1e-7)
            assert res.passed, (fam.tag, res.max_offdiag, res.max_diag_relerr)

    def test_cap_zero(self):
        res = quad.gram(bivariate.Z(0.0), 0)
        assert res.indices == [(0, 0)]
        assert_allclose(res.entries[((0, 0), (0, 0))], math.pi, rtol=1e-12)

    def test_q_entries_vanish_off_the_matched_line(self):
        # angular selection: entries with m - n != s - t are exact zeros
        val = quad._q_gram_entry(radial.wall(0.5, 0.5), (2, 0), (1, 0))
        assert val == 0.0


class TestZeros:
    def test_bisection_matches_eigensolver(self):
        for fam in (radial.laguerre(0.5), radial.shifted_jacobi(0.5, 0.5)):
            for n in (1, 3):
                z = radial.radial_zeros(fam, n, 1)
                ref = quad.bisection_zeros(fam, n, 1)
                assert_allclose(z, ref, atol=1e-9)

    def test_monotone_radii(self):
        mono, table, dev = quad.zero_circle_monotonicity(
            radial.laguerre(0.5), 2, range(2, 6)
        )
        assert mono
        assert dev < 1e-9
        assert [m for m, _ in table] == [2, 3, 4, 5]
        for _, radii in table:
            assert np.all(np.diff(radii) > 0) or radii.size == 1

    def test_rejects_indices_outside_wedge(self):
        with pytest.raises(ValueError):
            quad.zero_circle_monotonicity(radial.laguerre(0.0), 3, range(1, 4))
