"""Totally real fields F = Q(theta): elements, embeddings, validation, units."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import isqrt

from .exact import Matrix, PolyFp, PolyQ, as_q, hnf
from .realalg import (DyadicInterval, PrecisionBudget, SignUndecided, interval_eval,
                      interval_log, isolate_real_roots, leibniz_det, sign_decide)


class HypothesisError(ValueError):
    """Inputs violate a mathematical hypothesis of the construction."""


class ValidationError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NumberField:
    """Q[x]/(g) for a monic integral g; roots ordered per `embedding_order`."""

    def __init__(self, g, embedding_order="ascending"):
        if not isinstance(g, PolyQ):
            g = PolyQ(g)
        if g.deg < 1 or g.lead() != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        if embedding_order not in ("ascending", "descending"):
            raise ValueError("embedding_order must be 'ascending' or 'descending'")
        self.g = g
        self.n = g.deg
        self.embedding_order = embedding_order
        self._root_cache = {}

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.g == other.g
                and self.embedding_order == other.embedding_order)

    def __hash__(self):
        return hash((self.g, self.embedding_order))

    def __reduce__(self):
        return (NumberField, (self.g, self.embedding_order))

    def elem(self, coords):
        return FieldElement(self, coords)

    def one(self):
        return self.elem([1] + [0] * (self.n - 1))

    def theta(self):
        if self.n == 1:
            return self.elem([-self.g.coeff(0)])
        return self.elem([0, 1] + [0] * (self.n - 2))

    @cached_property
    def roots(self):
        rs = isolate_real_roots(self.g)
        if self.embedding_order == "descending":
            rs = rs[::-1]
        return rs

    @property
    def is_totally_real(self):
        return len(self.roots) == self.n

    def root_interval(self, i, bits):
        key = (i, bits)
        iv = self._root_cache.get(key)
        if iv is None:
            iv = self.roots[i].refine(bits).interval
            self._root_cache[key] = iv
        return iv

    @cached_property
    def power_trace(self):
        """Tr(theta^k) for k < 2n by Newton's identities."""
        n, c = self.n, self.g.c
        e = [Fraction(0)] * (n + 1)  # g = sum c_i x^i, e_k = (-1)^k c_{n-k}
        for k in range(n + 1):
            e[k] = (-1) ** k * c[n - k]
        s = [Fraction(n)]
        for k in range(1, 2 * n):
            acc = Fraction(0)
            for i in range(1, min(k, n) + 1):
                term = e[i] * (s[k - i] if k - i > 0 else 0)
                acc += (-1) ** (i - 1) * term
            if k <= n:
                acc += (-1) ** (k - 1) * k * e[k]
            s.append(acc)
        return s

    def poly_disc(self):
        n = self.n
        tr = self.power_trace
        return Matrix([[tr[i + j] for j in range(n)] for i in range(n)]).det()


class FieldElement:
    __slots__ = ("K", "c")

    def __init__(self, K, coords):
        coords = tuple(as_q(a) for a in coords)
        if len(coords) != K.n:
            raise ValueError(f"expected {K.n} coordinates, got {len(coords)}")
        self.K, self.c = K, coords

    @classmethod
    def _from_poly(cls, K, f):
        r = f % K.g if f.deg >= K.n else f
        return cls(K, [r.coeff(i) for i in range(K.n)])

    def poly(self):
        return PolyQ(self.c)

    def __repr__(self):
        return f"FieldElement({[str(a) for a in self.c]})"

    def __eq__(self, other):
        return isinstance(other, FieldElement) and self.c == other.c and self.K == other.K

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        return FieldElement(self.K, [other] + [0] * (self.K.n - 1))

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.K, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.K, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement._from_poly(self.K, self.poly() * other.poly())

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of y -> self*y in the power basis (columns = images of theta^j)."""
        K = self.K
        cols = []
        b = K.one()
        th = K.theta()
        for _ in range(K.n):
            cols.append((self * b).c)
            b = b * th
        return Matrix.from_columns(cols)

    def trace(self):
        tr = self.K.power_trace
        return sum((a * tr[i] for i, a in enumerate(self.c)), Fraction(0))

    def norm(self):
        return self.mult_matrix().det()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        e1 = [1] + [0] * (self.K.n - 1)
        return FieldElement(self.K, self.mult_matrix().solve(e1))

    def __pow__(self, e):
        if e < 0:
            if abs(self.norm()) != 1:
                raise ValueError("negative power of a non-unit")
            return self.inverse() ** (-e)
        out, base = self.K.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def embed(self, i, bits):
        """Enclosure of sigma_i(self)."""
        x = self.K.root_interval(i, bits + 8)
        return interval_eval(self.poly(), x, bits + 8).round(bits)

    def sign_vector(self, budget=None):
        return tuple(sign_decide(lambda b, i=i: self.embed(i, b), budget,
                                 what=f"sigma_{i + 1}(unit)")
                     for i in range(self.K.n))

    def is_totally_positive(self, budget=None):
        return all(s > 0 for s in self.sign_vector(budget))


@dataclass
class FieldSpec:
    min_poly: PolyQ
    discriminant: int
    totally_positive_units: list
    fundamental_units: list = None
    integral_basis: Matrix = None   # rows are omega_i in the power basis
    q2: int = 1
    name: str = "F"
    embedding_order: str = "ascending"
    narrow_class_number_one_asserted: bool = True
    field: NumberField = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.min_poly, PolyQ):
            self.min_poly = PolyQ(self.min_poly)
        self.field = NumberField(self.min_poly, self.embedding_order)
        K = self.field
        self.totally_positive_units = [u if isinstance(u, FieldElement) else K.elem(u)
                                       for u in self.totally_positive_units]
        if self.fundamental_units is not None:
            self.fundamental_units = [u if isinstance(u, FieldElement) else K.elem(u)
                                      for u in self.fundamental_units]
        if self.integral_basis is not None and not isinstance(self.integral_basis, Matrix):
            self.integral_basis = Matrix(self.integral_basis)

    @property
    def n(self):
        return self.field.n

    @property
    def omega(self):
        return self.integral_basis if self.integral_basis is not None else Matrix.identity(self.n)

    def integral_coords(self, x):
        """Coordinates of x in the integral basis."""
        if self.integral_basis is None:
            return list(x.c)
        return self.omega.T().solve(list(x.c))

    @cached_property
    def index(self):
        """[O_F : Z[theta]] from the integral basis."""
        d = abs(self.omega.det())
        if d == 0:
            raise ValidationError(["integral basis is singular"])
        inv = 1 / d
        if inv.denominator != 1:
            raise ValidationError(["integral basis does not contain Z[theta]"])
        return inv.numerator

    def with_units(self, units):
        return FieldSpec(self.min_poly, self.discriminant, list(units), self.fundamental_units,
                         self.integral_basis, self.q2, self.name, self.embedding_order,
                         self.narrow_class_number_one_asserted)


@dataclass
class ValidationReport:
    valid: bool
    problems: list
    index: int = None
    poly_discriminant: Fraction = None
    warnings: list = field(default_factory=list)

    def raise_if_invalid(self):
        if not self.valid:
            raise ValidationError(self.problems)


# irreducibility over Q -----------------------------------------------------

def _divisors(a):
    a = abs(a)
    out = []
    for d in range(1, isqrt(a) + 1):
        if a % d == 0:
            out += [d, a // d]
    return sorted(set(out))


def _has_rational_root(cs):
    # monic integral: rational roots are integer divisors of the constant term
    if cs[0] == 0:
        return True
    f = PolyQ(cs)
    return any(f(s * d) == 0 for d in _divisors(cs[0]) for s in (1, -1))


def _quartic_splits_into_quadratics(cs):
    a0, a1, a2, a3 = cs[:4]
    for c in _divisors(a0):
        for c_ in (c, -c):
            e = a0 // c_
            # b + d = a3, b*d = a2 - c - e
            s, pr = a3, a2 - c_ - e
            disc = s * s - 4 * pr
            if disc < 0 or isqrt(disc) ** 2 != disc:
                continue
            r = isqrt(disc)
            for b in ((s + r) // 2, (s - r) // 2):
                d = s - b
                if b + d == s and b * d == pr and b * e + c_ * d == a1:
                    return True
    return False


def irreducible_over_q(g):
    """(verdict, exact) for a monic integral g."""
    cs = g.int_coeffs()
    n = g.deg
    if n == 1:
        return True, True
    if _has_rational_root(cs):
        return False, True
    if n <= 3:
        return True, True
    if n == 4:
        return not _quartic_splits_into_quadratics(cs), True
    disc = NumberField(g).poly_disc()
    for p in _small_primes(200):
        if disc % p and PolyFp(p, cs).is_irreducible():
            return True, True
    return True, False


def _small_primes(limit):
    return [q for q in range(2, limit) if all(q % r for r in range(2, isqrt(q) + 1))]


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = 3
    while r * r <= p:
        if p % r == 0:
            return False
        r += 2
    return True


# validation ----------------------------------------------------------------

def regulator_matrix_interval(units, bits):
    K = units[0].K if units else None
    m = len(units)
    M = [[interval_log(units[j].embed(i, bits + 16).abs(), bits + 8) for j in range(m)]
         for i in range(m)]
    return leibniz_det(M)


def log_regulator_sign(units, budget=None):
    if not units:
        return 1
    return sign_decide(lambda b: regulator_matrix_interval(units, b), budget,
                       what="det(log|sigma_i(eps_j)|)")


def validate_field_spec(spec, budget=None):
    problems, warnings = [], []
    g = spec.min_poly
    n = g.deg
    rep = ValidationReport(valid=False, problems=problems, warnings=warnings)
    if n < 1:
        problems.append("minimal polynomial must have degree >= 1")
        return rep
    if g.lead() != 1:
        problems.append("minimal polynomial is not monic")
    if not g.is_integral():
        problems.append("minimal polynomial has non-integral coefficients")
    if problems:
        return rep
    irr, exact = irreducible_over_q(g)
    if not irr:
        problems.append("minimal polynomial is reducible over Q")
        return rep
    if not exact:
        warnings.append("irreducibility over Q not proven (degree >= 5, no inert test prime found)")
    K = spec.field
    if not g.is_squarefree() or not K.is_totally_real:
        problems.append("minimal polynomial is not totally real")
        return rep
    dg = K.poly_disc()
    rep.poly_discriminant = dg
    dF = spec.discriminant
    try:
        idx = spec.index
    except ValidationError as e:
        problems.extend(e.problems)
        return rep
    if dF <= 0 or dg.denominator != 1 or dg.numerator % dF:
        problems.append(f"disc(g) = {dg} is not d_F * square for d_F = {dF}")
    else:
        q = dg.numerator // dF
        r = isqrt(q)
        if r * r != q:
            problems.append(f"disc(g)/d_F = {q} is not a perfect square")
        elif r != idx:
            problems.append(f"index from discriminants ({r}) disagrees with integral basis ({idx})")
        else:
            rep.index = r
    units = spec.totally_positive_units
    if len(units) != n - 1:
        problems.append(f"expected {n - 1} totally positive units, got {len(units)}")
    for j, u in enumerate(units):
        if abs(u.norm()) != 1:
            problems.append(f"eps_{j + 1} is not a unit (norm {u.norm()})")
            continue
        if not all(spec.integral_coords(u)[i].denominator == 1 for i in range(n)):
            problems.append(f"eps_{j + 1} is not integral")
            continue
        try:
            if not u.is_totally_positive(budget):
                problems.append(f"eps_{j + 1} is not totally positive")
        except SignUndecided as e:
            problems.append(f"eps_{j + 1}: {e}")
    if not problems and units:
        try:
            log_regulator_sign(units, budget)
        except SignUndecided:
            problems.append("totally positive units are multiplicatively dependent")
    if spec.fundamental_units is not None:
        if len(spec.fundamental_units) != n - 1:
            problems.append(f"expected {n - 1} fundamental units")
        for j, u in enumerate(spec.fundamental_units):
            if abs(u.norm()) != 1:
                problems.append(f"fundamental unit {j + 1} is not a unit")
    if spec.q2 < 1:
        problems.append("q2 must be a positive integer")
    rep.valid = not problems
    return rep


# primes and units ----------------------------------------------------------

def is_inert(spec, p):
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    if spec.index % p == 0:
        raise HypothesisError(f"p = {p} divides the index [O_F : Z[theta]]")
    return PolyFp.reduce(spec.min_poly, p).is_irreducible()


def _f2_rank(vectors):
    rows = [int("".join("1" if s < 0 else "0" for s in v), 2) for v in vectors]
    rank = 0
    while rows:
        piv = max(rows)
        if piv == 0:
            break
        rows.remove(piv)
        top = piv.bit_length() - 1
        rows = [r ^ piv if (r >> top) & 1 else r for r in rows]
        rank += 1
    return rank


def unit_sign_index(spec, budget=None):
    """Q1 = [O_F^x : O_F^{x,+}] = 2^(F_2-rank of the signs of -1, u_1, ..., u_{n-1})."""
    if spec.fundamental_units is None:
        raise HypothesisError("fundamental units not supplied; pass Q1 explicitly")
    vecs = [tuple([-1] * spec.n)] + [u.sign_vector(budget) for u in spec.fundamental_units]
    return 2 ** _f2_rank(vecs)


def derive_totally_positive_generators(units, budget=None):
    """Generators of the totally positive subgroup of <-1, u_1, ..., u_r>."""
    if not units:
        return []
    for u in units:
        if abs(u.norm()) != 1:
            raise ValueError("input is not a unit")
    r = len(units)
    n = units[0].K.n
    sv = [u.sign_vector(budget) for u in units]
    bits = [tuple(int(s < 0) for s in v) for v in sv]
    allneg = tuple([1] * n)

    def ok(a):
        tot = tuple(sum(a[i] * bits[i][k] for i in range(r)) % 2 for k in range(n))
        return all(t == 0 for t in tot) or tot == allneg

    # exponent lattice L = {a : sign(prod u^a) in {+, -}^n constant}; 2Z^r <= L
    gens = [a for a in product((0, 1), repeat=r) if any(a) and ok(a)]
    basis = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    # reduce: echelon form over F_2 of the allowed parities, lifted
    echelon = []
    for a in gens:
        v = list(a)
        for e, piv in echelon:
            if v[piv]:
                v = [(x + y) % 2 for x, y in zip(v, e)]
        if any(v):
            piv = v.index(1)
            echelon.append((v, piv))
    for v, piv in echelon:
        basis[piv] = v
    H, _ = hnf(Matrix([list(col) for col in zip(*basis)]))
    out = []
    for j in range(r):
        a = [int(H[i, j]) for i in range(r)]
        x = units[0].K.one()
        for ui, ai in zip(units, a):
            x = x * ui ** ai
        if not x.is_totally_positive(budget):
            x = -x
        out.append(x)
    return out
