"""Quadrature and summation engines.

Gauss rules for the continuous radial measures (Golub–Welsch on the
symmetrized Jacobi matrix), exact angular integration over the circle,
q-lattice sums with certified tail bounds, Gram-matrix assembly for the
bivariate families, and zero-circle monotonicity checks.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from . import radial
from .polycore import Tolerance
from .qcalc import qpochhammer


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule: nodes, positive weights, and the highest polynomial
    degree integrated exactly."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness: int

    def integrate_poly(self, power_coeffs):
        """Integrate a polynomial given by ascending power coefficients."""
        vals = np.polynomial.polynomial.polyval(self.nodes, power_coeffs)
        return float(np.dot(self.weights, vals))


def golub_welsch(fam, alpha, npts):
    """Gauss rule for the measure x^alpha dnu of a continuous radial family.

    Nodes are the eigenvalues of the symmetrized Jacobi matrix; weights are
    the total measure mass times the squared first components of the
    eigenvectors.  Exact for polynomials of degree <= 2*npts - 1.
    """
    if npts < 1:
        raise ValueError("need at least one quadrature point")
    if fam.is_q():
        raise ValueError("q-lattice measures are summed, not quadratured")
    diag, off = radial.jacobi_matrix(fam, alpha, npts)
    vals, vecs = eigh_tridiagonal(diag, off)
    order = np.argsort(vals)
    nodes = vals[order]
    weights = radial.measure_mass(fam, alpha) * vecs[0, order] ** 2
    return QuadratureRule(nodes, weights, 2 * npts - 1)


def angular_integral(j, k):
    """Exact circle average of e^{i(j-k)theta} against dtheta/(2 pi)."""
    return 1.0 if j == k else 0.0


def angular_integral_trapezoid(j, k, nnodes=None):
    """Sampled cross-check of angular_integral: uniform trapezoid rule on
    the circle, exact for trigonometric degree < nnodes."""
    if nnodes is None:
        nnodes = 2 * (abs(j) + abs(k)) + 1
    total = 0.0 + 0.0j
    for s in range(nnodes):
        theta = 2.0 * math.pi * s / nnodes
        total += cmath.exp(1j * (j - k) * theta)
    return total / nnodes


def q_lattice_sum(fam, alpha, integrand, tail_tol=1e-16, dtype=float):
    """Sum integrand(x) against the discrete q-lattice measure of a q
    radial family with exponent x^alpha absorbed into the weight.

    Unilateral lattices (wall, qjacobi) run over x = q^k, k >= 0, stopping
    once the geometric tail bound term/(1 - q^(a+1)) drops below tail_tol
    times the accumulated value.  The bilateral lattice (qlaguerre) runs
    over x = c q^k, k in Z; the k -> -infinity direction decays through the
    (-x; q)_infinity denominator and is cut by the same relative criterion,
    with a divergence error if terms fail to shrink.
    """
    q = dtype(fam.q)
    a = alpha + fam.beta
    if fam.kind == "wall" or fam.kind == "qjacobi":
        if a + 1 <= 0:
            raise ValueError("unilateral lattice needs alpha + 1 > 0")
        tail_factor = 1.0 / (1.0 - q ** (a + 1))
        upper = qpochhammer(q, q)  # (q^{k+1}; q)_inf at k = 0... updated below
        lower = qpochhammer(q ** (fam.gamma + 1), q) if fam.kind == "qjacobi" else 1.0
        total = dtype(0.0)
        x = dtype(1.0)
        qa = dtype(1.0)  # q^{(a+1) k}
        for k in range(100000):
            if k > 0:
                upper = upper / (1.0 - q ** k)
                if fam.kind == "qjacobi":
                    lower = lower / (1.0 - q ** (fam.gamma + k))
                x *= q
                qa *= q ** (a + 1)
            w = qa * upper / lower
            term = w * integrand(x)
            total += term
            # the weight decays at least geometrically with ratio q^{a+1}
            # and the integrand is bounded on (0, 1], so the dropped tail is
            # below |term| * tail_factor once past the first node
            if k > 0 and abs(term) * tail_factor <= tail_tol * max(abs(total), 1e-300):
                return total
        raise RuntimeError("unilateral lattice sum did not converge")
    if fam.kind == "qlaguerre":
        c = dtype(fam.c)
        total = dtype(0.0)
        # upward direction k >= 0: x -> 0, mass ~ x^{a+1}
        denom = qpochhammer(-c, q)  # (-c q^k; q)_inf at k = 0
        x = c
        for k in range(100000):
            w = x ** (a + 1) / denom
            term = w * integrand(x)
            total += term
            # advance: (-c q^{k+1}; q)_inf = (-c q^k; q)_inf / (1 + c q^k)
            denom = denom / (1.0 + x)
            x = x * q
            if k > 5 and abs(term) / (1.0 - q ** (a + 1)) <= tail_tol * max(abs(total), 1e-300):
                break
        else:
            raise RuntimeError("bilateral lattice sum (upward) did not converge")
        # downward direction k <= -1: x -> infinity, (-x; q)_inf growth wins
        denom = qpochhammer(-c, q)
        x = c
        prev = math.inf
        bad = 0
        for k in range(100000):
            # step from q^{-k} to q^{-k-1}: (-c q^{-k-1}; q)_inf = (1 + c q^{-k-1}) (-c q^{-k}; q)_inf
            x = x / q
            denom = denom * (1.0 + x)
            w = x ** (a + 1) / denom
            term = w * integrand(x)
            total += term
            if abs(term) <= tail_tol * max(abs(total), 1e-300) and k > 2:
                return total
            if abs(term) >= prev:
                bad += 1
                if bad > 50:
                    raise RuntimeError("bilateral lattice sum diverges downward")
            else:
                bad = 0
            prev = abs(term)
        raise RuntimeError("bilateral lattice sum (downward) did not converge")
    raise ValueError(f"not a q-lattice family: {fam.kind!r}")


def radial_integral(fam, alpha, power_coeffs, npts=None, tail_tol=1e-16):
    """Integrate an ascending-power polynomial against x^alpha dnu, by Gauss
    rule (continuous families) or lattice sum (q families)."""
    power_coeffs = np.asarray(power_coeffs, dtype=float)
    if fam.is_q():
        def integrand(x):
            return np.polynomial.polynomial.polyval(x, power_coeffs)

        return q_lattice_sum(fam, alpha, integrand, tail_tol=tail_tol)
    if npts is None:
        npts = len(power_coeffs) // 2 + 1
    rule = golub_welsch(fam, alpha, npts)
    return rule.integrate_poly(power_coeffs)


def _angular_reduce(poly):
    """Reduce a table on the circle z1 = r e^{i theta}, z2 = r e^{-i theta}:
    average over theta keeps only balanced terms (j == k), returning the
    ascending coefficients of the induced polynomial in x = r^2."""
    deg = 0
    for (j, k) in poly.terms:
        if j == k:
            deg = max(deg, j)
    out = np.zeros(deg + 1)
    for (j, k), v in poly.terms.items():
        if j == k:
            out[j] += v
    return out


def _q_gram_entry(rad, idx1, idx2, tail_tol=1e-19):
    """Inner product of two q-family members in extended precision.

    The angular average kills every pair with m - n != s - t; for the
    surviving pairs the reduced radial polynomial is assembled directly
    from longdouble coefficient tables and summed over the lattice in
    longdouble, because the alternating table coefficients grow like
    negative q-powers and make the float64 sum lose ~9 digits at small q.
    """
    (m, n), (s, t) = idx1, idx2
    if m - n != s - t:
        return 0.0
    ld = np.longdouble
    c1 = radial.radial_coeffs(rad, min(m, n), abs(m - n), dtype=ld)
    c2 = radial.radial_coeffs(rad, min(s, t), abs(s - t), dtype=ld)
    reduced = np.zeros(m + t + 1, dtype=ld)
    for j in range(len(c1)):
        for i in range(len(c2)):
            reduced[m - j + t - i] += c1[j] * c2[i]

    def integrand(x):
        return np.polynomial.polynomial.polyval(x, reduced)

    return float(q_lattice_sum(rad, 0.0, integrand, tail_tol=tail_tol, dtype=ld))


@dataclass
class GramResult:
    """Gram matrix of a bivariate family over its planar measure.

    ``entries`` maps ((m,n),(s,t)) index pairs to inner products;
    ``diag_ref`` holds the closed-form diagonal values.  ``max_offdiag`` is
    normalized by the geometric mean of the adjacent diagonals.
    """

    indices: list
    entries: dict
    diag_ref: dict
    max_offdiag: float
    max_diag_relerr: float
    passed: bool
    notes: str = ""
    radii: list = field(default_factory=list)


def gram(fam, degree_cap, tol=None, offdiag_tol=1e-9, diag_rel_tol=1e-8):
    """Assemble the Gram matrix of a bivariate family up to a degree cap and
    compare with the closed-form diagonal.

    The 2D integral is reduced exactly over the angle, leaving a radial
    polynomial integral done by Gauss rule or lattice sum.  The matrix is
    filled symmetrically from the upper triangle.
    """
    from . import bivariate  # deferred to avoid import cycle

    rad = bivariate.radial_of(fam)
    norm_const = math.pi if fam.tag == "Z" else 1.0
    if fam.tag == "H":
        norm_const = math.pi
    indices = [(m, n) for m in range(degree_cap + 1) for n in range(degree_cap + 1)]
    tables = {idx: bivariate.construct(fam, *idx) for idx in indices}
    npts = 2 * degree_cap + 2
    rule = None if rad.is_q() else golub_welsch(rad, 0.0, npts)
    entries = {}
    for i, idx1 in enumerate(indices):
        for idx2 in indices[i:]:
            if rule is None:
                val = norm_const * _q_gram_entry(rad, idx1, idx2)
            else:
                prod = tables[idx1] * tables[idx2].swap_vars()
                coeffs = _angular_reduce(prod)
                if not coeffs.any():
                    val = 0.0
                else:
                    val = norm_const * rule.integrate_poly(coeffs)
            entries[(idx1, idx2)] = val
            entries[(idx2, idx1)] = val
    diag_ref = {}
    for (m, n) in indices:
        zref = radial.zeta(rad, min(m, n), abs(m - n))
        if fam.tag == "H":
            zref = zref * math.factorial(min(m, n)) ** 2
        diag_ref[(m, n)] = norm_const * zref
    max_off = 0.0
    max_rel = 0.0
    for (idx1, idx2), val in entries.items():
        if idx1 == idx2:
            max_rel = max(max_rel, abs(val - diag_ref[idx1]) / abs(diag_ref[idx1]))
        else:
            scale = math.sqrt(entries[(idx1, idx1)] * entries[(idx2, idx2)])
            max_off = max(max_off, abs(val) / scale)
    passed = max_off < offdiag_tol and max_rel < diag_rel_tol
    return GramResult(indices, entries, diag_ref, max_off, max_rel, passed)


def bisection_zeros(fam, n, alpha, tol=1e-13):
    """Refine the zeros of phi_n by bracketed root finding on sign changes,
    independent of the eigensolver route."""
    if n == 0:
        return np.array([])
    approx = radial.radial_zeros(fam, n, alpha)
    p = radial.radial_power_coeffs(fam, n, alpha)

    def f(x):
        return np.polynomial.polynomial.polyval(x, p)

    lo_edge = approx[0] - max(1.0, approx[0])
    hi_edge = approx[-1] + max(1.0, approx[-1])
    cuts = [lo_edge] + [(approx[i] + approx[i + 1]) / 2.0 for i in range(n - 1)] + [hi_edge]
    roots = []
    for i in range(n):
        a, b = cuts[i], cuts[i + 1]
        fa, fb = f(a), f(b)
        if fa * fb > 0:
            # widen toward the approximate root until a sign change appears
            a = approx[i] - 1e-6 * max(1.0, abs(approx[i]))
            b = approx[i] + 1e-6 * max(1.0, abs(approx[i]))
            fa, fb = f(a), f(b)
            if fa * fb > 0:
                roots.append(approx[i])
                continue
        roots.append(brentq(f, a, b, xtol=tol))
    return np.array(roots)


def zero_circle_monotonicity(rad, n, m_range, check_bisection=True):
    """Radii of the zero circles of f_{m,n} across a range of m.

    Returns (monotone, radii_table) where radii are sqrt of the radial
    zeros at alpha = m - n; monotone is True iff every radius strictly
    increases with m.  Optionally cross-checks the eigensolver zeros
    against bisection refinement.
    """
    radii_table = []
    max_dev = 0.0
    for m in m_range:
        if m < n:
            raise ValueError("zero-circle check needs m >= n")
        zeros = radial.radial_zeros(rad, n, m - n)
        if check_bisection:
            ref = bisection_zeros(rad, n, m - n)
            max_dev = max(max_dev, float(np.max(np.abs(zeros - ref))) if n else 0.0)
        radii_table.append((m, np.sqrt(zeros)))
    monotone = True
    for i in range(1, len(radii_table)):
        prev = radii_table[i - 1][1]
        cur = radii_table[i][1]
        if not np.all(cur > prev):
            monotone = False
    return monotone, radii_table, max_dev
