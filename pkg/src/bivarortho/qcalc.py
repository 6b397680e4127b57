"""Pochhammer symbols, q-Pochhammer symbols, q-numbers and terminating
(basic) hypergeometric sums.

All routines are plain scalar helpers used by the radial and bivariate
construction code.  Infinite q-products are truncated with a certified
geometric tail bound.
"""

import math

# Truncation target for infinite q-products.  The remaining tail of
# log(a;q)_inf after the last retained factor is bounded by
# |a q^K| / (1 - |q|); we stop once that bound drops below this epsilon.
TRUNCATION_EPS = 1e-17

_MAX_QPRODUCT_TERMS = 100000


def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1) for integer n >= 0.

    Uses a log-gamma evaluation for long products with a > 0 to avoid
    accumulating rounding error, and a direct product otherwise (which is
    exact for the sign pattern of nonpositive arguments, including the
    terminating zeros).
    """
    if n < 0:
        raise ValueError("pochhammer order must be nonnegative")
    if n == 0:
        return 1.0
    if a > 0 and n > 20:
        return math.exp(math.lgamma(a + n) - math.lgamma(a))
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def falling(a, n):
    """Falling factorial a (a-1) ... (a-n+1)."""
    out = 1.0
    for k in range(n):
        out *= a - k
    return out


def qpochhammer(a, q, n=None):
    """q-Pochhammer symbol (a; q)_n = prod_{k<n} (1 - a q^k).

    ``n=None`` gives the infinite product, which requires |q| < 1; the
    product is truncated once the geometric bound on the dropped log-tail,
    |a q^K| / (1 - |q|), falls below TRUNCATION_EPS.  Complex ``a`` is
    supported (used for unit-circle arguments).
    """
    if n is not None:
        if n < 0:
            raise ValueError("q-Pochhammer order must be nonnegative")
        out = 1.0
        aq = a
        for _ in range(n):
            out = out * (1.0 - aq)
            aq = aq * q
        return out
    if abs(q) >= 1:
        raise ValueError("infinite q-product needs |q| < 1")
    out = 1.0
    aq = a
    tail_factor = 1.0 / (1.0 - abs(q))
    for _ in range(_MAX_QPRODUCT_TERMS):
        if abs(aq) * tail_factor < TRUNCATION_EPS:
            return out
        out = out * (1.0 - aq)
        aq = aq * q
    raise RuntimeError("infinite q-product did not converge")


def qnumber(alpha, q):
    """q-number [alpha]_q = (1 - q^alpha) / (1 - q)."""
    return (1.0 - q ** alpha) / (1.0 - q)


def qbinomial(n, k, q):
    """Gaussian binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        return 0.0
    return qpochhammer(q, q, n) / (qpochhammer(q, q, k) * qpochhammer(q, q, n - k))


def hyper_terminating(num, den, x):
    """Terminating generalized hypergeometric sum.

    Computes sum_k prod_j (num_j)_k / (prod_j (den_j)_k * k!) * x^k, where at
    least one numerator parameter must be a nonpositive integer so the series
    terminates.  Built by forward term ratios, so the terminating zero is hit
    exactly.
    """
    nmax = None
    for a in num:
        if a <= 0 and abs(a - round(a)) < 1e-12:
            cand = int(-round(a))
            nmax = cand if nmax is None else min(nmax, cand)
    if nmax is None:
        raise ValueError("no nonpositive-integer numerator parameter; series does not terminate")
    total = 1.0
    term = 1.0
    for k in range(nmax):
        ratio = x / (k + 1.0)
        for a in num:
            ratio *= a + k
        for b in den:
            ratio /= b + k
        term *= ratio
        total += term
    return total


def qhyper_terminating(num, den, q, z):
    """Terminating basic hypergeometric sum r+1_phi_r.

    Computes sum_k prod_j (num_j; q)_k / ((q; q)_k prod_j (den_j; q)_k) z^k
    where some numerator parameter equals q^{-N} for a nonnegative integer N
    (the terminating parameter must be supplied exactly as q**(-N)).  The
    number of numerator parameters must exceed the denominator count by one,
    so no extra (-1)^k q^(k choose 2) factor appears.

    ``nterms`` is inferred from the terminating parameter.  Complex
    parameters are supported.
    """
    if len(num) != len(den) + 1:
        raise ValueError("expected r+1 numerator and r denominator parameters")
    nmax = None
    for a in num:
        if isinstance(a, complex):
            continue
        if a <= 1.0:
            continue
        # a == q^{-N} for integer N?
        est = math.log(a) / math.log(1.0 / q)
        if abs(est - round(est)) < 1e-9:
            cand = int(round(est))
            nmax = cand if nmax is None else min(nmax, cand)
    if nmax is None:
        raise ValueError("no q^{-N} numerator parameter; series does not terminate")
    total = 1.0
    term = 1.0
    qk = 1.0
    for k in range(nmax):
        ratio = z / (1.0 - q * qk)
        for a in num:
            ratio *= 1.0 - a * qk
        for b in den:
            ratio /= 1.0 - b * qk
        term = term * ratio
        qk *= q
        total = total + term
    return total
