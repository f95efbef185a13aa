"""Diagonalisation P A Q = D with d_1 | d_2 | ... over elementary divisor rings.

Off-diagonal entries are cleared with Bezout transforms of determinant 1.
The divisibility chain is then enforced pairwise: over the finite
(local-global) rings by the unit-value pattern, where suitable shifts make
a corner entry a unit, and over Z or class-number-one quadratic orders by
the gcd/lcm pattern.
"""
from dataclasses import dataclass

from . import modules
from .errors import PreconditionError, UnsupportedRing
from .ideals import FinGenIdeal, associate_unit
from .matrices import RingMatrix, mat_is_invertible, minors, supports_bezout
from .rings import Element, Product, Residue, bezout_data, inverse, unit_shift


@dataclass
class DiagonalForm:
    A: RingMatrix
    P: RingMatrix
    D: RingMatrix
    Q: RingMatrix

    @property
    def diagonal(self):
        return [self.D[i, i] for i in range(min(self.D.shape))]

    def verify(self):
        """Exact checks; returns a list of failure messages (empty when valid)."""
        errs = []
        if self.P @ self.A @ self.Q != self.D:
            errs.append("P A Q != D")
        if not self.D.is_diagonal():
            errs.append("D is not diagonal")
        if not mat_is_invertible(self.P):
            errs.append("P is not invertible")
        if not mat_is_invertible(self.Q):
            errs.append("Q is not invertible")
        d = self.diagonal
        for x, y in zip(d, d[1:]):
            if not FinGenIdeal(self.A.ring, [x]).contains(y):
                errs.append(f"{x} does not divide {y}")
        if not fitting_match(self.A, self.D):
            errs.append("Fitting ideals differ")
        return errs


def fitting_ideals(A):
    R = A.ring
    return [FinGenIdeal(R, list(minors(A, k))) for k in range(1, min(A.shape) + 1)]


def fitting_match(A, D):
    return fitting_ideals(A) == fitting_ideals(D)


class _Work:
    def __init__(self, A):
        R = A.ring
        m, n = A.shape
        self.R = R
        self.T = [list(r) for r in A.rows]
        self.P = [[R.one if i == j else R.zero for j in range(m)] for i in range(m)]
        self.Q = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]

    def rows_op(self, i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
        for M in (self.T, self.P):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def cols_op(self, i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + c col_j, b col_i + d col_j)
        for M in (self.T, self.Q):
            for row in M:
                x, y = row[i], row[j]
                row[i] = a * x + c * y
                row[j] = b * x + d * y

    def swap_rows(self, i, j):
        for M in (self.T, self.P):
            M[i], M[j] = M[j], M[i]

    def swap_cols(self, i, j):
        for M in (self.T, self.Q):
            for row in M:
                row[i], row[j] = row[j], row[i]


def _quotient(x, p):
    """k with k*p == x, or None."""
    sol = modules.solve_combination([[p]], [x])
    return None if sol is None else sol[0]


def _diagonalize_core(A):
    W = _Work(A)
    R = A.ring
    T = W.T
    m, n = A.shape
    for t in range(min(m, n)):
        pos = next(((i, j) for i in range(t, m) for j in range(t, n) if T[i][j]), None)
        if pos is None:
            break
        if pos[0] != t:
            W.swap_rows(t, pos[0])
        if pos[1] != t:
            W.swap_cols(t, pos[1])
        while True:
            for i in range(t + 1, m):
                if T[i][t]:
                    k = _quotient(T[i][t], T[t][t])
                    if k is not None:
                        W.rows_op(t, i, R.one, R.zero, -k, R.one)
                    else:
                        d, ap, bp, u, v = bezout_data(T[t][t], T[i][t], coprime=True)
                        W.rows_op(t, i, u, v, -bp, ap)
            for j in range(t + 1, n):
                if T[t][j]:
                    k = _quotient(T[t][j], T[t][t])
                    if k is not None:
                        W.cols_op(t, j, R.one, -k, R.zero, R.one)
                    else:
                        d, ap, bp, u, v = bezout_data(T[t][t], T[t][j], coprime=True)
                        W.cols_op(t, j, u, -bp, v, ap)
            if all(not T[i][t] for i in range(t + 1, m)):
                break
    return W


def _gcd_lcm_step(R, a, c):
    """2x2 (P, Q) with P diag(a, c) Q == diag(gcd, a'c)."""
    d, ap, cp, u, v = bezout_data(a, c, coprime=True)
    L1 = [[R.one, R.one], [R.zero, R.one]]
    Q1 = [[u, -cp], [v, ap]]
    L2 = [[R.one, R.zero], [-(v * cp), R.one]]
    return _mm(L2, L1), Q1


def _unit_value_step(R, a, c):
    """2x2 (P, Q) with P diag(a, c) Q == diag(g, g*delta) via unit values.

    diag(a, c) is first made lower triangular [[a, 0], [c, c]]; after the
    content g is factored out, shifts q and s make b' + c'q and a + s*d
    units, so the corner becomes a unit and the rest clears.
    """
    Q0 = [[R.one, R.zero], [R.one, R.one]]
    g, a1, c1, _, _ = bezout_data(a, c, coprime=True)
    b1 = c1
    d, bp, cp, _, _ = bezout_data(b1, c1, coprime=True)
    q = unit_shift(bp, cp)
    w = bp + cp * q
    Q1 = [[R.one, R.zero], [q, R.one]]
    s = unit_shift(a1, d)
    z = a1 + s * d
    winv = inverse(w)
    P1 = [[R.one, s * winv], [R.zero, R.one]]
    M = _mm(_mm(P1, [[a1, R.zero], [b1, c1]]), Q1)
    zinv = inverse(z)
    Q2 = [[R.one, -(zinv * M[0][1])], [R.zero, R.one]]
    P2 = [[zinv, R.zero], [-(M[1][0] * zinv), R.one]]
    P = _mm(P2, P1)
    Q = _mm(_mm(Q0, Q1), Q2)
    return P, Q


def _mm(X, Y):
    return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), X[0][0].ring.zero)
             for j in range(len(Y[0]))] for i in range(len(X))]


def _fix_divisibility(W, r):
    R = W.R
    T = W.T
    step = _unit_value_step if isinstance(R, Residue) else _gcd_lcm_step
    for i in range(r):
        for j in range(i + 1, r):
            a, c = T[i][i], T[j][j]
            if FinGenIdeal(R, [a]).contains(c):
                continue
            P2, Q2 = step(R, a, c)
            W.rows_op(i, j, P2[0][0], P2[0][1], P2[1][0], P2[1][1])
            W.cols_op(i, j, Q2[0][0], Q2[0][1], Q2[1][0], Q2[1][1])


def _diagonalize_single(A):
    W = _diagonalize_core(A)
    r = min(A.shape)
    _fix_divisibility(W, r)
    R = A.ring
    for i in range(r):
        x = W.T[i][i]
        if x:
            w = associate_unit(x)
            W.T[i] = [w * y for y in W.T[i]]
            W.P[i] = [w * y for y in W.P[i]]
    return RingMatrix(R, W.P), RingMatrix(R, W.T), RingMatrix(R, W.Q)


def _component(M, f, i):
    return RingMatrix(f, [[Element(f, x.value[i]) for x in row] for row in M.rows])


def _assemble(R, comps):
    rows = len(comps[0].rows)
    cols = len(comps[0].rows[0])
    return RingMatrix(R, [[Element(R, tuple(C.rows[a][b].value for C in comps))
                           for b in range(cols)] for a in range(rows)])


def diagonalize(A):
    """DiagonalForm with P A Q == D, D diagonal, d_1 | d_2 | ..."""
    R = A.ring
    if not supports_bezout(R):
        raise UnsupportedRing(f"diagonalize is not available over {R}; use decompose")
    if isinstance(R, Product):
        parts = [_diagonalize_single(_component(A, f, i)) for i, f in enumerate(R.factors)]
        P, D, Q = (_assemble(R, [p[k] for p in parts]) for k in range(3))
    else:
        P, D, Q = _diagonalize_single(A)
    form = DiagonalForm(A, P, D, Q)
    errs = form.verify()
    if errs:
        raise AssertionError("diagonalize self-check failed: " + "; ".join(errs))
    return form
