"""Dense exact matrices over Q and the integer Hermite normal form."""
from fractions import Fraction

from .rational import as_q


class SingularMatrix(ArithmeticError):
    pass


class Matrix:
    """Immutable row-major matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(as_q(a) for a in r) for r in rows)
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        cols = [list(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(" + repr([[str(a) for a in r] for r in self.rows]) + ")"

    def col(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def T(self):
        return Matrix(list(zip(*self.rows)))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return Matrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                           for r in self.rows])
        if isinstance(other, (int, Fraction)):
            return Matrix([[a * other for a in r] for r in self.rows])
        return self.apply(other)

    def __rmul__(self, other):
        return self * other

    def apply(self, v):
        v = list(v)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def _echelon(self, aug=None):
        """Gaussian elimination; returns (rows, aug_rows, det_sign_scale, rank)."""
        m = [list(r) for r in self.rows]
        a = [list(r) for r in aug] if aug is not None else None
        n, k = self.nrows, self.ncols
        det = Fraction(1)
        r = 0
        for c in range(k):
            piv = next((i for i in range(r, n) if m[i][c] != 0), None)
            if piv is None:
                det = Fraction(0)
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                if a is not None:
                    a[r], a[piv] = a[piv], a[r]
                det = -det
            pv = m[r][c]
            det *= pv
            for i in range(n):
                if i != r and m[i][c] != 0:
                    f = m[i][c] / pv
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                    if a is not None:
                        a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
        return m, a, det, r

    def rank(self):
        return self._echelon()[3]

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        if self.nrows == 0:
            return Fraction(1)
        m, _, det, r = self._echelon()
        return det if r == self.nrows else Fraction(0)

    def solve(self, b):
        """Exact solution of A x = b (b a vector or a Matrix of right-hand sides)."""
        if self.nrows != self.ncols:
            raise ValueError("solve needs a square matrix")
        vec = not isinstance(b, Matrix)
        rhs = [[as_q(x)] for x in b] if vec else [list(r) for r in b.rows]
        m, a, _, r = self._echelon(rhs)
        if r < self.nrows:
            raise SingularMatrix("matrix is singular")
        out = [[x / m[i][i] for x in a[i]] for i in range(self.nrows)]
        return [row[0] for row in out] if vec else Matrix(out)

    def inverse(self):
        return self.solve(Matrix.identity(self.nrows))

    def is_integral(self):
        return all(a.denominator == 1 for r in self.rows for a in r)

    def to_ints(self):
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[a.numerator for a in r] for r in self.rows]


def hnf(M):
    """Column Hermite normal form of a nonsingular integer matrix.

    Returns (H, U) with H = M*U, U unimodular, H lower triangular with
    positive diagonal and 0 <= H[i][j] < H[i][i] for j < i.
    """
    if isinstance(M, Matrix):
        A = M.to_ints()
    else:
        A = [list(map(int, r)) for r in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("hnf needs a square matrix")
    A = [r[:] for r in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, k, f):  # col_j -= f * col_k
        if f:
            for r in A:
                r[j] -= f * r[k]
            for r in U:
                r[j] -= f * r[k]

    def swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in U:
            r[j], r[k] = r[k], r[j]

    def neg(j):
        for r in A:
            r[j] = -r[j]
        for r in U:
            r[j] = -r[j]

    for i in range(n):
        # gcd-reduce row i over columns i..n-1 into column i
        while True:
            nz = [j for j in range(i, n) if A[i][j] != 0]
            if not nz:
                raise SingularMatrix("hnf input is singular")
            k = min(nz, key=lambda j: abs(A[i][j]))
            if k != i:
                swap(i, k)
            done = True
            for j in range(i + 1, n):
                if A[i][j]:
                    colop(j, i, A[i][j] // A[i][i])
                    if A[i][j]:
                        done = False
            if done:
                break
        if A[i][i] < 0:
            neg(i)
        for j in range(i):
            colop(j, i, A[i][j] // A[i][i])
    return Matrix(A), Matrix(U)
