"""Rigorous real arithmetic: dyadic intervals, Sturm root isolation, log, signs.

Interval endpoints are Fractions whose denominators are powers of two, so every
bound is exact and outward rounding is a floor/ceil at a chosen bit count.
"""
import os
from dataclasses import dataclass
from fractions import Fraction

from .exact.poly import PolyQ

DEFAULT_START_BITS = 128
DEFAULT_CAP_BITS = 4096


class SignUndecided(ArithmeticError):
    """Zero could not be excluded from an enclosure at the precision cap."""


def _down(x, bits):
    x = Fraction(x)
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _up(x, bits):
    x = Fraction(x)
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


class DyadicInterval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @classmethod
    def around(cls, x, bits):
        """Tightest enclosure of a rational with 2^-bits granularity."""
        return cls(_down(x, bits), _up(x, bits))

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        return self.lo <= x <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def subset_of(self, other):
        return other.lo <= self.lo and self.hi <= other.hi

    def sign(self):
        """+1/-1 if zero is excluded, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def round(self, bits):
        return DyadicInterval(_down(self.lo, bits), _up(self.hi, bits))

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo)

    def __add__(self, other):
        other = _iv(other)
        return DyadicInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_iv(other))

    def __rsub__(self, other):
        return _iv(other) - self

    def __mul__(self, other):
        other = _iv(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def abs(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(0, max(-self.lo, self.hi))


def _iv(x):
    return x if isinstance(x, DyadicInterval) else DyadicInterval(x)


def interval_eval(p, x, bits=None):
    """Horner evaluation of PolyQ p over interval x, rounded outward each step."""
    x = _iv(x)
    acc = DyadicInterval(0)
    for a in reversed(p.c):
        acc = acc * x + (DyadicInterval.around(a, bits) if bits else DyadicInterval(a))
        if bits:
            acc = acc.round(bits)
    return acc


# Sturm sequences -----------------------------------------------------------

def sturm_sequence(p):
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _variations(seq, x):
    signs = []
    for q in seq:
        v = q(x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count(seq, a, b):
    """Distinct real roots in (a, b]."""
    return _variations(seq, a) - _variations(seq, b)


def _cauchy_bound(p):
    lead = abs(p.lead())
    b = 1 + max((abs(a) / lead for a in p.c[:-1]), default=Fraction(0))
    # round up to a power of two
    k = 0
    while (1 << k) < b:
        k += 1
    return Fraction(1 << k)


@dataclass(frozen=True)
class IsolatedRoot:
    poly: PolyQ
    lo: Fraction
    hi: Fraction

    @property
    def interval(self):
        return DyadicInterval(self.lo, self.hi)

    def refine(self, bits):
        """Bisect until width <= 2^-bits."""
        lo, hi, p = self.lo, self.hi, self.poly
        if lo == hi:
            return self
        eps = Fraction(1, 1 << bits)
        slo = p(lo)
        if slo == 0:
            return IsolatedRoot(p, lo, lo)
        while hi - lo > eps:
            mid = (lo + hi) / 2
            sm = p(mid)
            if sm == 0:
                return IsolatedRoot(p, mid, mid)
            if (sm > 0) == (slo > 0):
                lo, slo = mid, sm
            else:
                hi = mid
        return IsolatedRoot(p, lo, hi)


def isolate_real_roots(p):
    """Disjoint dyadic isolating intervals of the real roots of p, ascending."""
    if p.deg < 1:
        raise ValueError("constant polynomial has no isolated roots")
    if not p.is_squarefree():
        raise ValueError("polynomial is not squarefree")
    seq = sturm_sequence(p)
    B = _cauchy_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        k = _count(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            # root in (a, b]; make sure the sign change is strict
            if p(b) == 0:
                out.append(IsolatedRoot(p, b, b))
            else:
                out.append(IsolatedRoot(p, a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort(key=lambda r: r.lo)
    return out


# logarithm -----------------------------------------------------------------

def _atanh_fixed(a, b, W):
    """Enclosure [L, U] * 2^-W of atanh(a/b) for 0 <= a/b <= 1/3."""
    if a == 0:
        return 0, 0
    a2, b2 = a * a, b * b
    pw = (a << W) // b
    total = 0
    err = 1
    j = 0
    while True:
        term = pw // (2 * j + 1)
        total += term
        err += j + 2
        if pw == 0:
            break
        pw = pw * a2 // b2
        j += 1
    # remaining true powers are below (j+2) ulps and shrink by s^2 <= 1/9
    tail = 2 * (j + 2)
    return total, total + err + tail


def _log_rational(r, bits, upper):
    """A bound (lower or upper) for log r, r > 0 rational, at 2^-bits granularity."""
    r = Fraction(r)
    k = r.numerator.bit_length() - r.denominator.bit_length()
    y = r / Fraction(2) ** k
    while y >= 2:
        y /= 2
        k += 1
    while y < 1:
        y *= 2
        k -= 1
    W = bits + 16 + max(k, -k).bit_length()
    s = (y - 1) / (y + 1)
    yl, yu = _atanh_fixed(s.numerator, s.denominator, W)
    ll, lu = _atanh_fixed(1, 3, W)
    # log r = k * 2 atanh(1/3) + 2 atanh(s)
    if k >= 0:
        lo = 2 * (k * ll + yl)
        hi = 2 * (k * lu + yu)
    else:
        lo = 2 * (k * lu + yl)
        hi = 2 * (k * ll + yu)
    val = Fraction(hi if upper else lo, 1 << W)
    return _up(val, bits) if upper else _down(val, bits)


def interval_log(x, bits=64):
    x = _iv(x)
    if x.lo <= 0:
        raise ValueError("log of a non-positive interval")
    return DyadicInterval(_log_rational(x.lo, bits, False), _log_rational(x.hi, bits, True))


# sign determination --------------------------------------------------------

def default_cap():
    env = os.environ.get("SHINTANI_PRECISION_CAP")
    return int(env) if env else DEFAULT_CAP_BITS


@dataclass(frozen=True)
class PrecisionBudget:
    current: int = DEFAULT_START_BITS
    cap: int = None

    def __post_init__(self):
        if self.cap is None:
            object.__setattr__(self, "cap", default_cap())
        if not 0 < self.current <= self.cap:
            raise ValueError("need 0 < current <= cap")


def sign_decide(producer, budget=None, what="value"):
    """Sign of the quantity enclosed by producer(bits), doubling bits up to the cap."""
    budget = budget or PrecisionBudget()
    bits = budget.current
    while True:
        s = producer(bits).sign()
        if s is not None:
            return s
        if bits >= budget.cap:
            raise SignUndecided(
                f"sign of {what} undecided at {budget.cap} bits "
                "(true zero or precision cap too low; raise --precision-cap)")
        bits = min(2 * bits, budget.cap)


def leibniz_det(M):
    """Determinant by permutation expansion; works for any ring-like entries."""
    from itertools import permutations

    n = len(M)
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i, j in enumerate(perm):
            term = M[i][j] if term is None else term * M[i][j]
        if term is None:
            term = DyadicInterval(1)
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else DyadicInterval(1)
