"""Tests for the sparse bivariate coefficient tables and their operators."""

import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from bivarortho.polycore import (
    BivariatePoly,
    Tolerance,
    identity_residual,
    residual,
)

# random sparse tables with small integer exponents and tame coefficients
coeffs = st.floats(-4.0, 4.0, allow_nan=False, allow_infinity=False)
keys = st.tuples(st.integers(0, 5), st.integers(0, 5))
polys = st.dictionaries(keys, coeffs, max_size=8).map(BivariatePoly)


class TestConstruction:
    def test_zero_pruning(self):
        p = BivariatePoly({(1, 2): 0.0, (0, 0): 3.0})
        assert p.terms == {(0, 0): 3.0}

    def test_zero_const_monomial(self):
        assert BivariatePoly.zero().is_zero()
        assert BivariatePoly.const(2.0).terms == {(0, 0): 2.0}
        assert BivariatePoly.monomial(2, 1, -3.0).terms == {(2, 1): -3.0}

    def test_equality_is_table_equality(self):
        assert BivariatePoly({(1, 0): 2.0}) == BivariatePoly({(1, 0): 2.0})
        assert BivariatePoly({(1, 0): 2.0}) != BivariatePoly({(0, 1): 2.0})

    def test_degrees(self):
        p = BivariatePoly({(3, 1): 1.0, (0, 4): 2.0})
        assert p.total_degree() == 4
        assert p.degree(1) == 3
        assert p.degree(2) == 4
        assert BivariatePoly.zero().total_degree() == -1


class TestArithmetic:
    @given(polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_addition_commutes(self, p, q):
        assert p + q == q + p

    @given(polys, polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_multiplication_distributes(self, p, q, r):
        lhs = p * (q + r)
        rhs = p * q + p * r
        assert residual(lhs, rhs) <= 1e-9 * max(
            1.0, p.max_abs_coeff() * (q.max_abs_coeff() + r.max_abs_coeff())
        )

    @given(polys, polys, st.floats(-2, 2), st.floats(-2, 2))
    @settings(max_examples=60, deadline=None)
    def test_product_evaluates_pointwise(self, p, q, z1, z2):
        direct = (p * q).evaluate(z1, z2)
        split = p.evaluate(z1, z2) * q.evaluate(z1, z2)
        assert_allclose(direct, split, rtol=1e-8, atol=1e-8)

    def test_scalar_ops(self):
        p = BivariatePoly({(1, 1): 2.0})
        assert (3.0 * p).terms == {(1, 1): 6.0}
        assert (p - p).is_zero()
        assert (1.0 - p).terms == {(0, 0): 1.0, (1, 1): -2.0}


class TestStructuralOps:
    @given(polys)
    @settings(max_examples=60, deadline=None)
    def test_swap_is_involution(self, p):
        assert p.swap_vars().swap_vars() == p

    @given(polys, st.floats(0.1, 2.0))
    @settings(max_examples=60, deadline=None)
    def test_dilate_matches_substitution(self, p, factor):
        z1, z2 = 0.7, -0.4
        assert_allclose(
            p.dilate(1, factor).evaluate(z1, z2),
            p.evaluate(factor * z1, z2),
            rtol=1e-9,
            atol=1e-9,
        )

    def test_shift_exponent(self):
        p = BivariatePoly({(1, 0): 2.0})
        assert p.shift_exponent(1, 2).terms == {(2, 2): 2.0}
        with pytest.raises(ValueError):
            p.shift_exponent(0, -1)


class TestDerivatives:
    def test_partial_on_monomial(self):
        p = BivariatePoly.monomial(3, 2, 2.0)
        assert p.diff_partial(1).terms == {(2, 2): 6.0}
        assert p.diff_partial(2).terms == {(3, 1): 4.0}
        assert BivariatePoly.const(5.0).diff_partial(1).is_zero()

    @given(polys, polys)
    @settings(max_examples=40, deadline=None)
    def test_product_rule(self, p, q):
        lhs = (p * q).diff_partial(1)
        rhs = p.diff_partial(1) * q + p * q.diff_partial(1)
        scale = max(1.0, p.max_abs_coeff() * q.max_abs_coeff())
        assert residual(lhs, rhs) <= 1e-9 * 20.0 * scale

    @given(polys)
    @settings(max_examples=40, deadline=None)
    def test_euler_operator_factorization(self, p):
        # z d/dz equals the exponent-multiplication operator
        for var in (1, 2):
            mono = BivariatePoly.monomial(1, 0) if var == 1 else BivariatePoly.monomial(0, 1)
            assert p.diff_theta(var) == mono * p.diff_partial(var)

    @given(polys, st.floats(0.2, 0.9))
    @settings(max_examples=40, deadline=None)
    def test_qtheta_is_z_times_qpartial(self, p, q):
        for var in (1, 2):
            mono = BivariatePoly.monomial(1, 0) if var == 1 else BivariatePoly.monomial(0, 1)
            lhs = p.diff_qtheta(var, q)
            rhs = mono * p.diff_qpartial(var, q)
            assert residual(lhs, rhs) <= 1e-10 * max(1.0, p.max_abs_coeff())

    @given(polys, st.floats(0.2, 0.9))
    @settings(max_examples=40, deadline=None)
    def test_qpartial_difference_quotient(self, p, q):
        # D_q f at a point equals (f(z) - f(qz)) / ((1-q) z)
        z1, z2 = 0.8, -0.6
        lhs = p.diff_qpartial(1, q).evaluate(z1, z2)
        rhs = (p.evaluate(z1, z2) - p.evaluate(q * z1, z2)) / ((1.0 - q) * z1)
        assert_allclose(lhs, rhs, rtol=1e-8, atol=1e-8)

    def test_qinv_partial_uses_inverse_base(self):
        q = 0.5
        p = BivariatePoly({(2, 0): 1.0, (1, 1): -3.0})
        assert p.diff_qinv_partial(1, q) == p.diff_qpartial(1, 1.0 / q)

    @given(polys, st.floats(0.2, 0.9))
    @settings(max_examples=40, deadline=None)
    def test_qpartial_classical_limit(self, p, q):
        # D_q -> d/dz as q -> 1: check at q close to 1
        qq = 0.999999
        lhs = p.diff_qpartial(2, qq)
        rhs = p.diff_partial(2)
        assert residual(lhs, rhs) <= 1e-4 * max(1.0, p.max_abs_coeff())


class TestResidualsAndTolerance:
    def test_identity_residual(self):
        p = BivariatePoly({(1, 0): 1.0})
        r = BivariatePoly({(1, 0): 1.0 + 1e-12, (0, 1): 5.0})
        res, scale = identity_residual(p, r)
        assert_allclose(res, 5.0)
        assert_allclose(scale, 5.0)

    def test_tolerance_gates(self):
        tol = Tolerance(abs_tol=1e-10, rel_tol=1e-9)
        assert tol.passes(5e-11, 0.0)
        assert tol.passes(5e-7, 1e3)
        assert not tol.passes(5e-7, 1.0)
