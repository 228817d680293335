"""Exact rationals.

``fractions.Fraction`` already keeps numerator and denominator reduced with a
positive denominator, so it is used directly as the rational type.  The
helpers here cover parsing/formatting and the few integer-flavoured operations
the rest of the package needs.
"""
from fractions import Fraction
from math import gcd

Q = Fraction

__all__ = ["Q", "as_q", "q_str", "parse_q", "floor_q", "lcm", "lcm_many", "check_reduced"]


def as_q(x):
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_q(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_q(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def q_str(x):
    """Canonical string form used in reports: ``"num/den"`` or ``"num"``."""
    x = as_q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def floor_q(x):
    return x.numerator // x.denominator


def lcm(a, b):
    return a // gcd(a, b) * b if a and b else 0


def lcm_many(values):
    out = 1
    for v in values:
        out = lcm(out, v)
    return out


def check_reduced(x):
    """Invariant check: reduced with positive denominator."""
    return x.denominator > 0 and gcd(abs(x.numerator), x.denominator) == 1
