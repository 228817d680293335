"""Hecke L-function decomposition, the CM class number formula and n = 1 oracles."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial, gcd

import numpy as np

from . import _kernels
from .exact import PolyQ, bernoulli_poly, lcm_many
from .ff import FFContext, find_primitive, minimal_polynomial_lift
from .numfield import HypothesisError, is_inert, is_prime, unit_sign_index
from .shintani import (HIGH, LOW, build_frames, build_genfun, compositions, kernel_enumerate,
                       tau_label)


class NonIntegralClassNumber(ArithmeticError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"h_K = {report.h_K} is not a positive integer; "
                         "check w_K, Q1 and Q2")


# Bernoulli-trace sums -------------------------------------------------------

def bernoulli_trace_sum(frame, x):
    """sum over compositions l of n of prod_k B_{l_k}(x_k)/l_k! * Tr(prod_k f_k^{l_k-1})."""
    n = frame.n
    total = Fraction(0)
    for l, tr in frame.trace_table.items():
        if tr == 0:
            continue
        prod = Fraction(1)
        for k, lk in enumerate(l):
            prod *= bernoulli_poly(lk)(Fraction(x[k])) / factorial(lk)
            if prod == 0:
                break
        total += prod * tr
    return total


def zeta_at_zero(frame, x):
    n = frame.n
    return Fraction((-1) ** n, n) * bernoulli_trace_sum(frame, x)


def trace_polynomial(frame):
    """The Bernoulli-trace sum as a dict {exponent tuple: coefficient}."""
    n = frame.n
    out = {}
    for l, tr in frame.trace_table.items():
        if tr == 0:
            continue
        terms = {(): Fraction(tr)}
        for lk in l:
            b = bernoulli_poly(lk)
            scale = Fraction(1, factorial(lk))
            terms = {e + (j,): a * bj * scale for e, a in terms.items()
                     for j, bj in enumerate(b.c) if bj}
        for e, a in terms.items():
            out[e] = out.get(e, 0) + a
    return {e: a for e, a in out.items() if a}


# residue-field data ---------------------------------------------------------

@dataclass
class ResidueSetup:
    p: int
    ctx: FFContext
    rho: tuple
    h: PolyQ
    T_ff: object   # Matrix; identity when rho is the class of theta
    genfun: object

    @cached_property
    def xbar(self):
        pc = [int(self.h.coeff(i)) for i in range(self.h.deg)]
        return _kernels.residues(pc, self.p, self.p ** self.h.deg - 1)

    def v(self):
        """theta-coordinates mod p of rho^{n+m}, m = 1..p^n - 1."""
        T = np.asarray(self.T_ff.to_ints(), dtype=np.int64)
        return (self.xbar @ T.T) % self.p


def residue_setup(spec, p, rho=None):
    ctx = FFContext(p, spec.min_poly)
    prefer = rho if rho is not None else ctx.theta()
    r = find_primitive(ctx, prefer)
    if rho is not None and tuple(r) != ctx.elem(rho):
        raise HypothesisError(f"requested rho = {rho} is not a primitive element of F_{p}^{ctx.n}")
    h = minimal_polynomial_lift(ctx, r, spec.min_poly)
    return ResidueSetup(p, ctx, r, h, ctx.power_basis_change(r), build_genfun(h))


def check_prime(spec, p):
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    if not is_inert(spec, p):
        raise HypothesisError(f"p = {p} is not inert in {spec.name}")


# integer layout of a Shintani set -----------------------------------------

@dataclass
class IntegerSet:
    frame: object
    D: int
    kernel: list        # Fraction tuples, identity first
    W: np.ndarray       # kernel numerators (k, n)
    C: np.ndarray       # x~(1, m) numerators (p^n - 1, n)
    high: np.ndarray

    def grid(self):
        return _kernels.oplus_grid(self.C, self.W, self.D, self.high)

    def point(self, i, m):
        g = _kernels.modfrac_np(self.C[m - 1] + self.W[i - 1], self.D, self.high)
        return tuple(Fraction(int(a), self.D) for a in g)

    def __len__(self):
        return self.W.shape[0] * (self.C.shape[0] + 1)


def integer_set(frame, spec, setup):
    p = setup.p
    L = lcm_many(a.denominator for r in frame.T.rows for a in r)
    D = L * p
    T_int = np.asarray([[int(a * L) for a in r] for r in frame.T.rows], dtype=np.int64)
    high = np.asarray([k == HIGH for k in frame.kinds], dtype=np.bool_)
    C = _kernels.modfrac_np(setup.v() @ T_int.T, D, high)
    kern = kernel_enumerate(frame, spec)
    W = np.asarray([[int(a * D) for a in pt] for pt in kern], dtype=np.int64)
    return IntegerSet(frame, D, kern, W, C, high)


def s_table(iset):
    """Exact numerators of the inner sums over the common denominator.

    Returns (num, den) with num[i, m-1] * (-1)^m / den = S_tau(i, m).
    """
    frame = iset.frame
    n = frame.n
    poly = trace_polynomial(frame)
    den_c = lcm_many(a.denominator for a in poly.values())
    exps = np.asarray(list(poly.keys()), dtype=np.int64).reshape(len(poly), n)
    coefs = [int(a * den_c) for a in poly.values()]
    G = iset.grid()
    k, M, _ = G.shape
    vals = _kernels.poly_eval(G.reshape(k * M, n), exps, coefs, iset.D, n).reshape(k, M)
    signs = np.where(np.arange(1, M + 1) % 2 == 0, 1, -1)
    if vals.dtype == object:
        num = vals * signs.astype(object)
    else:
        num = vals * signs
    return num, den_c * iset.D ** n


# reports ------------------------------------------------------------------

@dataclass
class FrameResult:
    frame: object
    iset: object
    column_totals: list           # Fractions, one per kernel element
    table: list = None            # table[i][m-1] = S_tau(i+1, m)

    @property
    def total(self):
        return sum(self.column_totals, Fraction(0))


@dataclass
class ClassNumberReport:
    name: str
    p: int
    n: int
    w_K: int
    Q1: int
    Q2: int
    setup: object
    frames: list
    results: list
    grand_total: Fraction
    h_K: Fraction
    warnings: list = field(default_factory=list)

    @property
    def integral(self):
        return self.h_K.denominator == 1 and self.h_K > 0

    def result(self, label):
        return next(r for r in self.results if r.frame.label == label)


def _phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def check_cm_inputs(spec, p, w_K):
    if p % 4 != 3:
        raise HypothesisError(f"p = {p} is not 3 mod 4")
    check_prime(spec, p)
    if w_K < 2 or w_K % 2 or (2 * spec.n) % _phi(w_K):
        raise HypothesisError(f"w_K = {w_K} is not an admissible number of roots of unity")


def class_number_cm(spec, p, w_K, Q1=None, Q2=None, rho=None, budget=None, keep_table=True,
                    frames=None):
    check_cm_inputs(spec, p, w_K)
    warnings = []
    if Q1 is None:
        Q1 = unit_sign_index(spec, budget)
    if Q2 is None:
        Q2 = spec.q2
        if Q2 == 1:
            warnings.append("Q2 = [O_F^{x,+} : N O_K^x] taken as 1 (input, not verified)")
    setup = residue_setup(spec, p, rho)
    frames = frames if frames is not None else build_frames(spec, budget)
    results = []
    grand = Fraction(0)
    for fr in frames:
        if fr.weight == 0:
            continue
        iset = integer_set(fr, spec, setup)
        num, den = s_table(iset)
        totals = [Fraction(int(sum(int(a) for a in row)), den) for row in num]
        table = None
        if keep_table:
            table = [[Fraction(int(a), den) for a in row] for row in num]
        res = FrameResult(fr, iset, totals, table)
        results.append(res)
        grand += fr.weight * res.total
    h = Fraction(1, spec.n) * Fraction(w_K, Q1 * Q2) * grand
    return ClassNumberReport(spec.name, p, spec.n, w_K, Q1, Q2, setup, frames, results, grand,
                             h, warnings)


def require_integral(report):
    if not report.integral:
        raise NonIntegralClassNumber(report)
    return report


# decomposition by characters of conductor pO_F -----------------------------

@dataclass
class DecompositionTerm:
    tau: str
    weight: int
    m: int
    token: tuple          # (numerator mod d, d): the root of unity exp(2 pi i num / d)
    tuples: list
    f: list


def decompose(spec, p, k, d, rho=None, budget=None):
    check_prime(spec, p)
    N = p ** spec.n - 1
    if d <= 1 or N % d:
        raise HypothesisError(f"d = {d} must satisfy 1 < d | p^n - 1 = {N}")
    if gcd(k, d) != 1:
        raise HypothesisError(f"gcd(k, d) = gcd({k}, {d}) != 1")
    setup = residue_setup(spec, p, rho)
    terms = []
    for fr in build_frames(spec, budget):
        if fr.weight == 0:
            continue
        iset = integer_set(fr, spec, setup)
        kk = len(iset.kernel)
        for m in range(1, N + 1):
            tok = (k * (spec.n + m)) % d
            g = gcd(tok, d)
            terms.append(DecompositionTerm(fr.label, fr.weight, m, (tok // g, d // g),
                                           [iset.point(i, m) for i in range(1, kk + 1)],
                                           [x.c for x in fr.f]))
    return terms


# real quadratic skeleton -------------------------------------------------

def real_quadratic_skeleton(spec, p, rho=None, budget=None):
    """Symbolic structure of h_K R_K / R_F for K = F(sqrt(p)), p = 1 mod 4.

    Nothing is evaluated numerically: log factors are tokens and the
    zeta-derivative values are slots.
    """
    if p % 4 != 1:
        raise HypothesisError(f"p = {p} is not 1 mod 4")
    check_prime(spec, p)
    n = spec.n
    setup = residue_setup(spec, p, rho)
    slots = []
    for fr in build_frames(spec, budget):
        if fr.weight == 0:
            continue
        iset = integer_set(fr, spec, setup)
        for m in range(1, p ** n):
            for i in range(1, len(iset.kernel) + 1):
                slots.append({"tau": fr.label, "weight": fr.weight, "sign": (-1) ** m,
                              "m": m, "i": i, "A": [list(x.c) for x in fr.f],
                              "x": iset.point(i, m)})
    terms = []
    for k in range(n + 1):
        terms.append({
            "k": k,
            "coefficient": (-1) ** k * comb(n, k),
            "log_factor": {"log_of": p ** n, "power": n - k},
            "zeta_derivative_order": k,
            "slot_count": len(slots),
        })
    return {"prefactor": Fraction(1, factorial(n)), "n": n, "p": p, "terms": terms,
            "slots": slots}


# n = 1 oracles ------------------------------------------------------------

def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def dirichlet_oracle(p):
    if p % 4 != 3 or not is_prime(p):
        raise ValueError("p must be a prime congruent to 3 mod 4")
    w = 6 if p == 3 else 2
    s = sum(legendre(r, p) * r for r in range(1, p))
    h = Fraction(-w, 2 * p) * s
    if h.denominator != 1:
        raise ArithmeticError("non-integral Dirichlet sum")
    return h.numerator


def is_primitive_root(g, p):
    return gcd(g, p) == 1 and len({pow(g, k, p) for k in range(1, p)}) == p - 1


def smallest_primitive_root(p):
    return next(g for g in range(2, p) if is_primitive_root(g, p))


def girstmair_oracle(p, g=None):
    if p % 4 != 3 or p < 7 or not is_prime(p):
        raise ValueError("p must be a prime >= 7 congruent to 3 mod 4")
    g = smallest_primitive_root(p) if g is None else g
    if not is_primitive_root(g, p):
        raise ValueError(f"{g} is not a primitive root mod {p}")
    # digits x_1..x_{p-1} of 1/p in base g (purely periodic, period p - 1)
    r, s = 1, 0
    for k in range(1, p):
        r *= g
        x, r = divmod(r, p)
        s += (-1) ** k * x
    h = Fraction(s, g + 1)
    if h.denominator != 1:
        raise ArithmeticError("non-integral digit sum")
    return h.numerator
