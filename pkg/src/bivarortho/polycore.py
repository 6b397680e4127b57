"""Exact sparse bivariate polynomial tables and the difference/derivative
operators acting on them.

A polynomial in the variables (z1, z2) is stored as a dict mapping exponent
pairs (j, k) to numeric coefficients (float or complex).  All operators act
exactly on the coefficient table; evaluation happens only at the point where
a numeric answer is requested.
"""

from dataclasses import dataclass


def _clean(terms):
    return {k: v for k, v in terms.items() if v != 0}


class BivariatePoly:
    """Sparse polynomial sum_{(j,k)} c_{j,k} z1^j z2^k.

    Coefficients live in a dict keyed by the exponent pair.  Exact zeros are
    pruned on construction so that equality of tables means equality of
    polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = _clean(terms or {})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, j, k, c=1.0):
        return cls({(j, k): c})

    def __repr__(self):
        if not self.terms:
            return "BivariatePoly(0)"
        bits = []
        for (j, k) in sorted(self.terms):
            bits.append(f"({self.terms[(j, k)]})*z1^{j}*z2^{k}")
        return "BivariatePoly(" + " + ".join(bits) + ")"

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BivariatePoly):
            return BivariatePoly({k: v * other for k, v in self.terms.items()})
        out = {}
        for (j1, k1), v1 in self.terms.items():
            for (j2, k2), v2 in other.terms.items():
                key = (j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + v1 * v2
        return BivariatePoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return -1
        return max(j + k for (j, k) in self.terms)

    def degree(self, var):
        """Degree in z1 (var=1) or z2 (var=2); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = 0 if var == 1 else 1
        return max(key[i] for key in self.terms)

    def max_abs_coeff(self):
        if not self.terms:
            return 0.0
        return max(abs(v) for v in self.terms.values())

    def evaluate(self, z1, z2):
        """Evaluate at a point; terms are accumulated in sorted key order so
        the result is deterministic across runs."""
        total = 0.0
        for (j, k) in sorted(self.terms):
            total = total + self.terms[(j, k)] * z1 ** j * z2 ** k
        return total

    def swap_vars(self):
        """Exchange z1 and z2."""
        return BivariatePoly({(k, j): v for (j, k), v in self.terms.items()})

    def dilate(self, var, factor):
        """Substitute z_var -> factor * z_var (used for q-shifted arguments)."""
        i = 0 if var == 1 else 1
        return BivariatePoly(
            {key: v * factor ** key[i] for key, v in self.terms.items()}
        )

    def shift_exponent(self, dj, dk):
        """Multiply by z1^dj z2^dk; negative shifts must divide exactly."""
        out = {}
        for (j, k), v in self.terms.items():
            jj, kk = j + dj, k + dk
            if jj < 0 or kk < 0:
                raise ValueError("exponent shift produced a negative power")
            out[(jj, kk)] = v
        return BivariatePoly(out)

    # --- derivative / difference operators -----------------------------

    def diff_partial(self, var):
        """d/dz_var."""
        out = {}
        for (j, k), v in self.terms.items():
            if var == 1:
                if j > 0:
                    out[(j - 1, k)] = out.get((j - 1, k), 0) + j * v
            else:
                if k > 0:
                    out[(j, k - 1)] = out.get((j, k - 1), 0) + k * v
        return BivariatePoly(out)

    def diff_theta(self, var):
        """Euler operator z_var d/dz_var; multiplies each term by its exponent."""
        i = 0 if var == 1 else 1
        return BivariatePoly({key: key[i] * v for key, v in self.terms.items()})

    def diff_qpartial(self, var, q):
        """Forward q-derivative D_q f(z) = (f(z) - f(qz)) / ((1-q) z)."""
        i = 0 if var == 1 else 1
        out = {}
        for key, v in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            nk = (key[0] - 1, key[1]) if var == 1 else (key[0], key[1] - 1)
            out[nk] = out.get(nk, 0) + v * (1.0 - q ** e) / (1.0 - q)
        return BivariatePoly(out)

    def diff_qinv_partial(self, var, q):
        """Backward q-derivative D_{q^{-1}} f(z) = (f(z) - f(z/q)) / ((1-1/q) z)."""
        return self.diff_qpartial(var, 1.0 / q)

    def diff_qtheta(self, var, q):
        """q-Euler operator theta_q f(z) = (f(z) - f(qz)) / (1-q); each term
        z^e is multiplied by the q-number [e]_q = (1-q^e)/(1-q)."""
        i = 0 if var == 1 else 1
        return BivariatePoly(
            {key: v * (1.0 - q ** key[i]) / (1.0 - q) for key, v in self.terms.items()}
        )


def residual(p, r):
    """Maximum absolute coefficient difference between two tables."""
    diff = p - r
    return diff.max_abs_coeff()


@dataclass(frozen=True)
class Tolerance:
    """Pass/fail gate: a residual passes when it is below the absolute floor
    or below the relative bound times the supplied scale."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9

    def passes(self, res, scale):
        return res <= self.abs_tol or res <= self.rel_tol * max(scale, 1.0)


def identity_residual(lhs, rhs):
    """Residual and scale (max |coeff| over both sides) for lhs == rhs."""
    res = residual(lhs, rhs)
    scale = max(lhs.max_abs_coeff(), rhs.max_abs_coeff())
    return res, scale
