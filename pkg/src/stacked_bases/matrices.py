"""Exact matrices over the supported rings."""
from functools import lru_cache

from .errors import NotInvertible, PreconditionError, RingMismatch, UnsupportedRing
from .rings import Element, Integers, Product, Quadratic, Residue, bezout_data, inverse, is_unit


class RingMatrix:
    """Row-major matrix of ring elements. Treated as immutable."""

    def __init__(self, ring, rows):
        rows = tuple(tuple(ring(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise PreconditionError("matrices need positive dimensions")
        if len({len(r) for r in rows}) != 1:
            raise PreconditionError("ragged matrix")
        self.ring = ring
        self.rows = rows

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __repr__(self):
        from .literals import format_matrix
        return f"RingMatrix({self.ring}, {format_matrix(self)!r})"

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, m, n):
        return cls(ring, [[ring.zero] * n for _ in range(m)])

    @classmethod
    def from_columns(cls, ring, cols, nrows=None):
        cols = [list(c) for c in cols]
        if not cols:
            return cls.zeros(ring, nrows, 1)
        return cls(ring, [[c[i] for c in cols] for i in range(len(cols[0]))])

    @classmethod
    def diagonal(cls, ring, entries, m=None, n=None):
        m = m or len(entries)
        n = n or len(entries)
        rows = [[ring.zero] * n for _ in range(m)]
        for i, x in enumerate(entries):
            rows[i][i] = ring(x)
        return cls(ring, rows)

    def columns(self):
        return [[row[j] for row in self.rows] for j in range(self.ncols)]

    def transpose(self):
        return RingMatrix(self.ring, self.columns())

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, scalar):
        return RingMatrix(self.ring, [[scalar * x for x in row] for row in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        return RingMatrix(self.ring, [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RingMatrix(self.ring, [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def apply(self, v):
        return [sum((x * y for x, y in zip(row, v)), self.ring.zero) for row in self.rows]

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def is_diagonal(self):
        return all(x.is_zero() for i, row in enumerate(self.rows) for j, x in enumerate(row) if i != j)

    def det(self):
        if self.nrows != self.ncols:
            raise PreconditionError("determinant of a non-square matrix")
        return determinant(self.rows, self.ring)


def mat_mul(A, B):
    if A.ring != B.ring:
        raise RingMismatch(f"{A.ring} vs {B.ring}")
    if A.ncols != B.nrows:
        raise PreconditionError(f"dimension mismatch {A.shape} @ {B.shape}")
    R = A.ring
    cols = B.columns()
    return RingMatrix(R, [[sum((x * y for x, y in zip(row, c)), R.zero) for c in cols] for row in A.rows])


def determinant(rows, R):
    """Division-free Laplace expansion memoised over column subsets."""
    n = len(rows)

    @lru_cache(maxsize=None)
    def minor(i, cols):
        if i == n:
            return R.one
        out = R.zero
        sign = 1
        for pos, c in enumerate(cols):
            x = rows[i][c]
            if x:
                sub = minor(i + 1, cols[:pos] + cols[pos + 1:])
                term = x * sub
                out = out + term if sign > 0 else out - term
            sign = -sign
        return out

    return minor(0, tuple(range(n)))


def minors(A, k):
    """All k x k minors of A (row subsets outer, column subsets inner)."""
    from itertools import combinations
    for rs in combinations(range(A.nrows), k):
        for cs in combinations(range(A.ncols), k):
            yield determinant(tuple(tuple(A.rows[i][j] for j in cs) for i in rs), A.ring)


def mat_is_invertible(A):
    if A.nrows != A.ncols:
        raise PreconditionError("invertibility of a non-square matrix")
    return is_unit(A.det())


def mat_inverse(A):
    if not mat_is_invertible(A):
        raise NotInvertible("matrix is not invertible")
    R = A.ring
    n = A.nrows
    dinv = inverse(A.det())
    if n == 1:
        return RingMatrix(R, [[dinv]])
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = tuple(tuple(A.rows[r][c] for c in range(n) if c != j) for r in range(n) if r != i)
            cof = determinant(sub, R)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof * dinv
    return RingMatrix(R, out)


def supports_bezout(R):
    """Dispatch: rings where bezout_data is total."""
    if isinstance(R, (Integers, Residue)):
        return True
    if isinstance(R, Quadratic):
        return R.d < 0 and R.class_number() == 1
    if isinstance(R, Product):
        return all(supports_bezout(f) for f in R.factors)
    return False


def _reduce_above(R, x, pivot):
    """q with x - q*pivot in the canonical reduced range."""
    if isinstance(R, Integers):
        return R(x.value // pivot.value)
    if isinstance(R, Residue):
        return R(x.value // pivot.value) if pivot.value else R.zero
    if isinstance(R, Product):
        return Element(R, tuple(_reduce_above(f, Element(f, a), Element(f, b)).value
                                for f, a, b in zip(R.factors, x.value, pivot.value)))
    return R.zero


def hermite_reduce(A):
    """(P, T) with P invertible and P @ A == T in row echelon form.

    Entries below each pivot are zero, pivots are canonical associates and
    over Z (and Z/n) entries above a pivot are reduced into [0, pivot).
    """
    from .ideals import associate_unit
    R = A.ring
    if not supports_bezout(R):
        raise UnsupportedRing(f"hermite_reduce needs a Bezout ring, got {R}")
    m, n = A.shape
    T = [list(r) for r in A.rows]
    P = [[R.one if i == j else R.zero for j in range(m)] for i in range(m)]

    def combine(r, i, u, v, s, t):
        for M in (T, P):
            a, b = M[r], M[i]
            M[r] = [u * x + v * y for x, y in zip(a, b)]
            M[i] = [s * x + t * y for x, y in zip(a, b)]

    r = 0
    for j in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if T[i][j]:
                d, ap, bp, u, v = bezout_data(T[r][j], T[i][j], coprime=True)
                combine(r, i, u, v, -bp, ap)
        if not T[r][j]:
            continue
        w = associate_unit(T[r][j])
        T[r] = [w * x for x in T[r]]
        P[r] = [w * x for x in P[r]]
        piv = T[r][j]
        for k in range(r):
            q = _reduce_above(R, T[k][j], piv)
            if q:
                T[k] = [x - q * y for x, y in zip(T[k], T[r])]
                P[k] = [x - q * y for x, y in zip(P[k], P[r])]
        r += 1
    return RingMatrix(R, P), RingMatrix(R, T)


def content_of_matrix(A):
    from .ideals import content
    return content(A.rows, A.ring)
