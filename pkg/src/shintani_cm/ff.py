"""The residue field F_{p^n} = F_p[x]/(g mod p) and primitive elements."""
from fractions import Fraction
from itertools import product

from .exact import Matrix, PolyFp, PolyQ

TRIAL_DIVISION_CAP = 1 << 48


def factorize(N):
    """Trial division; fine for p^n - 1 at desk scale."""
    if N > TRIAL_DIVISION_CAP:
        raise ValueError(f"{N} exceeds the trial-division cap")
    out = []
    d = 2
    while d * d <= N:
        if N % d == 0:
            e = 0
            while N % d == 0:
                N //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if N > 1:
        out.append((N, 1))
    return out


class FFContext:
    def __init__(self, p, modulus):
        if isinstance(modulus, PolyQ):
            modulus = PolyFp.reduce(modulus, p)
        self.p = p
        self.modulus = modulus.monic()
        self.n = self.modulus.deg
        if not self.modulus.is_irreducible():
            raise ValueError(f"modulus is reducible mod {p}")
        self.order = p ** self.n - 1
        self.factors = factorize(self.order)

    def elem(self, coeffs):
        cs = [int(a) % self.p for a in coeffs]
        cs += [0] * (self.n - len(cs))
        return tuple(cs)

    def one(self):
        return self.elem([1])

    def theta(self):
        return self.reduce_poly(PolyFp(self.p, [0, 1]))

    def reduce_poly(self, f):
        r = f % self.modulus
        return self.elem(r.c)

    def mul(self, a, b):
        return self.reduce_poly(PolyFp(self.p, a) * PolyFp(self.p, b))

    def pow(self, a, e):
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def is_zero(self, a):
        return not any(a)

    def element_order(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("zero has no multiplicative order")
        N = self.order
        for q, e in self.factors:
            for _ in range(e):
                if self.pow(a, N // q) == self.one():
                    N //= q
                else:
                    break
        return N

    def min_poly_coeffs(self, a):
        """Coefficients (p_0..p_{d-1}) mod p of the minimal polynomial of a, and d."""
        n, p = self.n, self.p
        pows = [self.one()]
        for _ in range(n):
            pows.append(self.mul(pows[-1], a))
        # find the smallest d with a^d in span(a^0..a^{d-1})
        for d in range(1, n + 1):
            sol = _solve_mod_p([list(v) for v in pows[:d]], list(pows[d]), p)
            if sol is not None:
                return [(-s) % p for s in sol], d
        raise AssertionError("minimal polynomial degree exceeds n")

    def power_basis_change(self, rho):
        """Columns: coordinates of rho^j in the basis 1, theta, ..., theta^{n-1}."""
        cols = [self.one()]
        for _ in range(self.n - 1):
            cols.append(self.mul(cols[-1], rho))
        M = Matrix.from_columns([list(c) for c in cols])
        if _det_mod_p(M, self.p) == 0:
            raise AssertionError("power basis change is singular mod p")
        return M


def _solve_mod_p(cols, rhs, p):
    """Solve sum x_j cols[j] = rhs over F_p; None if inconsistent."""
    n = len(rhs)
    k = len(cols)
    A = [[cols[j][i] % p for j in range(k)] + [rhs[i] % p] for i in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    if any(A[i][k] for i in range(r, n)):
        return None
    if len(pivots) < k:
        return None  # dependent powers means degree < k; caller only needs full rank
    x = [0] * k
    for i, c in enumerate(pivots):
        x[c] = A[i][k]
    return x


def _det_mod_p(M, p):
    A = [[int(a) % p for a in r] for r in M.to_ints()]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            f = A[i][c] * inv % p
            A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return det % p


def element_order(ctx, a):
    return ctx.element_order(a)


def is_primitive(ctx, a):
    if ctx.is_zero(a):
        return False
    return ctx.element_order(a) == ctx.order and ctx.min_poly_coeffs(a)[1] == ctx.n


def find_primitive(ctx, prefer=None):
    """`prefer` if primitive, else the first primitive element in scan order.

    Scan order: coefficient vectors (c_0, ..., c_{n-1}) ordered by the integer
    c_0 + c_1 p + ... + c_{n-1} p^{n-1}, starting at 1.
    """
    if prefer is not None and is_primitive(ctx, ctx.elem(prefer)):
        return ctx.elem(prefer)
    for k in range(1, ctx.order + 1):
        cs = [(k // ctx.p ** i) % ctx.p for i in range(ctx.n)]
        a = ctx.elem(cs)
        if is_primitive(ctx, a):
            return a
    raise AssertionError("no primitive element found")


def minimal_polynomial_lift(ctx, rho, g=None):
    """Monic integral h_rho with h_rho(rho) = 0 mod p.

    If rho is the class of theta and g is given, h_rho = g. Otherwise the
    coefficients are lifted to the balanced residues (-p/2, p/2].
    """
    if g is not None and ctx.n > 1 and tuple(rho) == ctx.theta():
        return g
    coeffs, d = ctx.min_poly_coeffs(rho)
    if d != ctx.n:
        raise ValueError("minimal polynomial of rho has degree < n")
    p = ctx.p
    bal = [c - p if c > p // 2 else c for c in coeffs]
    return PolyQ(bal + [1])


def power_basis_change(ctx, rho):
    return ctx.power_basis_change(rho)
