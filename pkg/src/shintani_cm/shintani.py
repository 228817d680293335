"""Shintani frames, the generating-function system and Shintani sets R^tau(pO_F)."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product

from .exact import Matrix, PolyQ, RationalFunction, hnf, floor_q
from .exact.linalg import SingularMatrix
from .numfield import HypothesisError, log_regulator_sign
from .realalg import PrecisionBudget, SignUndecided, interval_eval, sign_decide

LOW = "[0,1)"    # c_i > 0
HIGH = "(0,1]"   # c_i <= 0


def perm_sign(tau):
    t = [x - 1 for x in tau]
    s = 1
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                s = -s
    return s


def all_permutations(n):
    """S_{n-1} as tuples of 1-based images, identity first."""
    return [tuple(p) for p in permutations(range(1, n))]


def tau_label(tau):
    """Cycle notation: () -> 'id', (2,1) -> '(12)'."""
    seen, cycles = set(), []
    for i in range(1, len(tau) + 1):
        if i in seen or tau[i - 1] == i:
            seen.add(i)
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = tau[j - 1]
        cycles.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(cycles) or "id"


def modified_frac(x, kind):
    x = Fraction(x)
    fr = x - floor_q(x)
    if kind == HIGH and fr == 0:
        return Fraction(1)
    return fr


@dataclass
class ShintaniFrame:
    tau: tuple
    f: list                 # FieldElements f_{tau,1..n}
    weight: int
    kinds: tuple
    P: Matrix = None        # columns: power coordinates of f_j
    T: Matrix = None        # power coordinates -> B_tau coordinates
    M: Matrix = None        # columns: integral-basis coordinates of f_j
    kernel_index: int = 0
    c_signs: tuple = ()
    det_A_sign: int = 0
    log_det_sign: int = 0

    @property
    def label(self):
        return tau_label(self.tau)

    @property
    def n(self):
        return len(self.f)

    def identity_point(self):
        if self.weight == 0:
            raise ValueError("degenerate frame (w_tau = 0)")
        return tuple(Fraction(0) if k == LOW else Fraction(1) for k in self.kinds)

    def reduce(self, t):
        return tuple(modified_frac(x, k) for x, k in zip(t, self.kinds))

    def oplus(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    @cached_property
    def trace_table(self):
        """Tr(prod_k f_k^{l_k - 1}) for every composition l of n."""
        n = self.n
        inv = [fk.inverse() for fk in self.f]
        out = {}
        for l in compositions(n, n):
            x = self.f[0].K.one()
            for k, lk in enumerate(l):
                if lk == 0:
                    x = x * inv[k]
                elif lk > 1:
                    x = x * self.f[k] ** (lk - 1)
            out[l] = x.trace()
        return out


def compositions(total, parts):
    """Tuples of `parts` non-negative integers summing to `total` (lex order)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _vandermonde_sign(n, order):
    if order == "ascending":
        return 1
    return -1 if (n * (n - 1) // 2) % 2 else 1


def _c_numerators(spec, P):
    """Polynomials h_i with c_i = h_i(r_n) / g'(r_n) (reduced mod g)."""
    g = spec.min_poly
    n = g.deg
    # q(x) = g(x)/(x - r): q_{n-1} = 1, q_{k-1} = g_k + r q_k, as polynomials in r
    q = [None] * n
    q[n - 1] = PolyQ([1])
    for k in range(n - 1, 0, -1):
        q[k - 1] = PolyQ([g.coeff(k)]) + PolyQ([0, 1]) * q[k]
    Pinv = P.inverse()
    out = []
    for i in range(n):
        h = PolyQ([])
        for k in range(n):
            h = h + Pinv[i, k] * q[k]
        out.append(h % g if g.deg > 0 else h)
    return out


def build_frame(spec, tau, budget=None):
    K = spec.field
    n = K.n
    eps = spec.totally_positive_units
    f = [K.one()]
    for j in range(1, n):
        f.append(f[-1] * eps[tau[j - 1] - 1])
    P = Matrix.from_columns([x.c for x in f])
    M = Matrix.from_columns([spec.integral_coords(x) for x in f])
    if M.rank() < n:
        return ShintaniFrame(tau, f, 0, (), P=P, M=M)
    if not M.is_integral():
        raise HypothesisError("totally positive units are not integral in the given basis")
    detP = P.det()
    det_sign = (1 if detP > 0 else -1) * _vandermonde_sign(n, K.embedding_order)
    log_sign = log_regulator_sign(eps, budget)
    w = (-1) ** (n - 1) * perm_sign(tau) * det_sign * log_sign
    # signs of c with A^tau c = e_n
    gp = spec.min_poly.derivative()
    last = n - 1
    hs = _c_numerators(spec, P)

    def enclosure(poly):
        return lambda bits: interval_eval(poly, K.root_interval(last, bits + 8), bits + 8)

    gsign = sign_decide(enclosure(gp), budget, what="g'(r_n)")
    c_signs = []
    for i, h in enumerate(hs):
        if h.is_zero():
            raise SignUndecided(f"c_{i + 1} for tau = {tau_label(tau)} is exactly zero")
        c_signs.append(gsign * sign_decide(enclosure(h), budget,
                                           what=f"c_{i + 1} for tau = {tau_label(tau)}"))
    kinds = tuple(LOW if s > 0 else HIGH for s in c_signs)
    return ShintaniFrame(tau, f, w, kinds, P=P, T=P.inverse(), M=M,
                         kernel_index=abs(M.det().numerator), c_signs=tuple(c_signs),
                         det_A_sign=det_sign, log_det_sign=log_sign)


def build_frames(spec, budget=None):
    return [build_frame(spec, tau, budget) for tau in all_permutations(spec.n)]


# generating functions ------------------------------------------------------

@dataclass
class GenFunSystem:
    h: PolyQ
    X: list
    D: PolyQ

    @property
    def n(self):
        return self.h.deg

    def matrix(self):
        """A_{F,rho}(z) as a list of PolyQ rows."""
        return genfun_matrix(self.h)

    def rhs(self):
        return [-self.h.coeff(i) for i in range(self.n)]

    def series(self, count):
        """Exact coefficient vectors x(0..count-1)."""
        cols = [Xi.series_coefficients(count) for Xi in self.X]
        return [tuple(c[m] for c in cols) for m in range(count)]

    def series_mod_p(self, p, count):
        """x(m) mod p by the linear recurrence of D(z); x(0) = -p_i."""
        n = self.n
        pc = [int(self.h.coeff(i)) for i in range(n)]
        x = [tuple((-c) % p for c in pc)]
        for _ in range(1, count):
            prev = x[-1]
            # x(m) = coordinates of rho * rho^{n+m-1}: shift and reduce by h
            top = prev[n - 1]
            nxt = [(-pc[0] * top) % p] + [(prev[i - 1] - pc[i] * top) % p for i in range(1, n)]
            x.append(tuple(nxt))
        return x


def genfun_matrix(h):
    n = h.deg
    z = PolyQ([0, 1])
    A = [[PolyQ([]) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        A[i][i] = A[i][i] + 1
        if i > 0:
            A[i][i - 1] = -z
        A[i][n - 1] = A[i][n - 1] + z * h.coeff(i)
    return A


def poly_det(A):
    n = len(A)
    if n == 0:
        return PolyQ([1])
    total = PolyQ([])
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = PolyQ([1])
        for i, j in enumerate(perm):
            term = term * A[i][j]
            if term.is_zero():
                break
        total = total - term if inv % 2 else total + term
    return total


def expected_denominator(h):
    n = h.deg
    return PolyQ([1] + [h.coeff(n - j) for j in range(1, n + 1)])


def build_genfun(h):
    n = h.deg
    if h.lead() != 1:
        raise ValueError("h_rho must be monic")
    if h.coeff(0) == 0:
        raise AssertionError("h_rho(0) = 0, so h_rho is not irreducible")
    A = genfun_matrix(h)
    D = poly_det(A)
    if D != expected_denominator(h):
        raise AssertionError("det A_{F,rho}(z) differs from 1 + z p_{n-1} + ... + z^n p_0")
    v = [PolyQ([-h.coeff(i)]) for i in range(n)]
    X = []
    for i in range(n):
        Ai = [row[:i] + [v[r]] + row[i + 1:] for r, row in enumerate(A)]
        X.append(RationalFunction(poly_det(Ai), D))
    return GenFunSystem(h, X, D)


# cosets and kernel ---------------------------------------------------------

def coset_rep(frame, xbar, T_ff, p):
    """x~(1, m) from the B_rho coordinates xbar of rho^{n+m} mod p."""
    v = [Fraction(int(a) % p) for a in T_ff.apply(xbar)] if T_ff is not None else \
        [Fraction(a) for a in xbar]
    t = frame.T.apply(v)
    return frame.reduce([x / p for x in t])


def kernel_enumerate(frame, spec):
    """O_F intersected with R^tau(pO_F): identity first, the rest in lexicographic order."""
    if frame.weight == 0:
        raise ValueError("degenerate frame")
    H, _ = hnf(frame.M)
    n = frame.n
    omegaT = spec.omega.T()
    pts = []
    seen = set()
    for v in product(*[range(int(H[i, i])) for i in range(n)]):
        power = omegaT.apply(list(v))
        pt = frame.reduce(frame.T.apply(power))
        if pt in seen:
            raise AssertionError("duplicate kernel representative")
        seen.add(pt)
        pts.append(pt)
    if len(pts) != frame.kernel_index:
        raise AssertionError("kernel size differs from |det M_tau|")
    ident = frame.identity_point()
    if ident not in seen:
        raise AssertionError("identity missing from kernel")
    pts.remove(ident)
    return [ident] + sorted(pts)


def pi_map(point, frame, spec, p):
    """p * (sum t_i f_i) in integral coordinates mod p."""
    power = frame.P.apply(point)
    ic = spec.integral_coords(spec.field.elem(power))
    out = []
    for a in ic:
        a = a * p
        if a.denominator != 1:
            raise AssertionError("pi_{p,tau} produced a non-integral element")
        out.append(a.numerator % p)
    return tuple(out)


@dataclass
class ShintaniSet:
    frame: ShintaniFrame
    kernel: list
    C: list                 # x~(1, m), m = 1..p^n - 1
    p: int

    def point(self, i, m):
        return self.frame.oplus(self.C[m - 1], self.kernel[i - 1])

    def columns(self):
        return [[self.point(i, m) for m in range(1, len(self.C) + 1)]
                for i in range(1, len(self.kernel) + 1)]

    def all_points(self):
        pts = list(self.kernel)
        for col in self.columns():
            pts.extend(col)
        return pts

    def __len__(self):
        return len(self.kernel) * (len(self.C) + 1)


def residue_coords(genfun, p, T_ff):
    """xbar(m) for m = 1..p^n - 1 (B_rho coordinates of rho^{n+m} mod p)."""
    N = p ** genfun.n - 1
    return genfun.series_mod_p(p, N + 1)[1:]


def full_set(frame, spec, genfun, T_ff, p, check=True):
    kern = kernel_enumerate(frame, spec)
    xs = residue_coords(genfun, p, T_ff)
    C = [coset_rep(frame, x, T_ff, p) for x in xs]
    S = ShintaniSet(frame, kern, C, p)
    if check:
        pts = S.all_points()
        if len(set(pts)) != len(pts):
            raise AssertionError("duplicate point in Shintani set")
    return S
