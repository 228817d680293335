"""Bernoulli numbers and polynomials (convention B_1 = -1/2)."""
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .poly import PolyQ


@lru_cache(maxsize=None)
def bernoulli_number(l):
    if l < 0:
        raise ValueError("l must be non-negative")
    if l == 0:
        return Fraction(1)
    # sum_{k<l+1} C(l+1, k) B_k = 0
    s = sum(comb(l + 1, k) * bernoulli_number(k) for k in range(l))
    return -s / (l + 1)


@lru_cache(maxsize=None)
def bernoulli_poly(l):
    """B_l(x) = sum_k C(l, k) B_k x^{l-k}."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return PolyQ([comb(l, j) * bernoulli_number(l - j) for j in range(l + 1)])


def bernoulli_poly_egf(l):
    """Independent route: coefficients of t e^{xt}/(e^t - 1) as a series in t.

    t/(e^t - 1) is inverted as a power series, then multiplied by e^{xt};
    the coefficient of t^l times l! is B_l(x).
    """
    N = l + 1
    # (e^t - 1)/t = sum t^k/(k+1)!
    a = [Fraction(1, factorial(k + 1)) for k in range(N)]
    inv = [Fraction(0)] * N
    inv[0] = 1 / a[0]
    for k in range(1, N):
        inv[k] = -sum(a[j] * inv[k - j] for j in range(1, k + 1)) / a[0]
    # coefficient of t^l in inv(t) * e^{xt}: sum_j inv[l-j] x^j / j!
    return PolyQ([inv[l - j] / factorial(j) * factorial(l) for j in range(l + 1)])
