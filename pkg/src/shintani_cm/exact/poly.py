"""Dense univariate polynomials over Q and F_p, and rational functions."""
from fractions import Fraction

from .rational import as_q


def _trim(cs, zero):
    cs = list(cs)
    while cs and cs[-1] == zero:
        cs.pop()
    return tuple(cs)


class PolyQ:
    """Polynomial with Fraction coefficients, ascending degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _trim((as_q(a) for a in coeffs), 0)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, a):
        return cls([a])

    @property
    def deg(self):
        return len(self.c) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, PolyQ):
            other = _lift(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"PolyQ({[str(a) for a in self.c]})"

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                coef = "-" if a < 0 else ""
            else:
                coef = str(a) if mono == "" else f"{a}*"
            parts.append(coef + mono)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __neg__(self):
        return PolyQ([-a for a in self.c])

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.c), len(other.c))
        return PolyQ([self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if not self.c or not other.c:
            return PolyQ()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out, base = PolyQ([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.deg
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead()
        for i in range(len(rem) - 1, dq - 1, -1):
            f = rem[i] * inv
            if f:
                q[i - dq] = f
                for j, b in enumerate(other.c):
                    rem[i - dq + j] -= f * b
        return PolyQ(q), PolyQ(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self):
        return PolyQ([i * a for i, a in enumerate(self.c)][1:])

    def monic(self):
        if not self.c:
            return self
        inv = 1 / self.lead()
        return PolyQ([a * inv for a in self.c])

    def gcd(self, other):
        a, b = self, _lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self):
        return self.gcd(self.derivative()).deg == 0

    def is_integral(self):
        return all(a.denominator == 1 for a in self.c)

    def int_coeffs(self):
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return [a.numerator for a in self.c]

    def reverse(self, n=None):
        """z^n * f(1/z) for n = deg unless given."""
        n = self.deg if n is None else n
        return PolyQ([self.coeff(n - i) for i in range(n + 1)])

    def content_primitive(self):
        """Integer primitive part (positive leading coefficient)."""
        from .rational import lcm_many
        from math import gcd

        if not self.c:
            return self
        den = lcm_many(a.denominator for a in self.c)
        ints = [int(a * den) for a in self.c]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return PolyQ([v // g for v in ints])


def _lift(x):
    return x if isinstance(x, PolyQ) else PolyQ([x])


class PolyFp:
    """Polynomial over F_p with coefficients in [0, p), ascending degree."""

    __slots__ = ("p", "c")

    def __init__(self, p, coeffs=()):
        self.p = p
        self.c = _trim((int(a) % p for a in coeffs), 0)

    @property
    def deg(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else 0

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __eq__(self, other):
        return isinstance(other, PolyFp) and self.p == other.p and self.c == other.c

    def __hash__(self):
        return hash((self.p, self.c))

    def __repr__(self):
        return f"PolyFp({self.p}, {list(self.c)})"

    def _new(self, cs):
        return PolyFp(self.p, cs)

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        return self._new([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        return self._new([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return self._new([-a for a in self.c])

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new([a * other for a in self.c])
        if not self.c or not other.c:
            return self._new([])
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return self._new(out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.c)
        dq = other.deg
        q = [0] * max(len(rem) - dq, 0)
        inv = pow(other.lead(), -1, p)
        for i in range(len(rem) - 1, dq - 1, -1):
            f = rem[i] * inv % p
            if f:
                q[i - dq] = f
                for j, b in enumerate(other.c):
                    rem[i - dq + j] = (rem[i - dq + j] - f * b) % p
        return self._new(q), self._new(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.c:
            return self
        inv = pow(self.lead(), -1, self.p)
        return self._new([a * inv for a in self.c])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e, mod):
        out, base = self._new([1]), self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = (acc * x + a) % self.p
        return acc

    @classmethod
    def reduce(cls, f, p):
        """Reduce an integral PolyQ mod p."""
        return cls(p, f.int_coeffs())

    def is_irreducible(self):
        """Degree n irreducible iff gcd(x^{p^k} - x, f) = 1 for k <= n/2."""
        n = self.deg
        if n <= 0:
            return False
        if n == 1:
            return True
        f = self.monic()
        x = self._new([0, 1])
        xp = x
        for _ in range(1, n // 2 + 1):
            xp = xp.powmod(self.p, f)
            if (xp - x).gcd(f).deg > 0:
                return False
        # x^{p^n} = x mod f is also needed to rule out repeated factors
        for _ in range(n // 2 + 1, n + 1):
            xp = xp.powmod(self.p, f)
        return (xp - x) % f == self._new([])


class RationalFunction:
    """num/den over Q; only used as power series around 0."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num, den = _lift(num), _lift(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def __repr__(self):
        return f"({self.num})/({self.den})"

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and (
            self.num * other.den == other.num * self.den
        )

    def __hash__(self):
        return hash(repr(self))

    def series_coefficients(self, count):
        """Taylor coefficients at 0 via the recurrence from the denominator."""
        d0 = self.den.coeff(0)
        if d0 == 0:
            raise ValueError("denominator vanishes at 0")
        inv = 1 / d0
        dd = self.den.c
        out = []
        for m in range(count):
            acc = self.num.coeff(m)
            for j in range(1, min(m, len(dd) - 1) + 1):
                acc -= dd[j] * out[m - j]
            out.append(acc * inv)
        return out
