import random

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from stacked_bases import lattice, _hnf_py
from stacked_bases.errors import NotInvertible
from stacked_bases.ideals import FinGenIdeal
from stacked_bases.matrices import (RingMatrix, content_of_matrix, hermite_reduce, mat_inverse,
                                    mat_is_invertible, mat_mul)
from stacked_bases.rings import Integers, Product, Quadratic, Residue

Z = Integers()
R12 = Residue(12)


def sympy_row_hnf(rows, n):
    # sympy's column HNF puts pivots at the bottom; reverse coordinates to match
    rev = Matrix([r[::-1] for r in rows]).T
    W = hermite_normal_form(rev)
    return sorted(tuple(list(W.T.row(i))[::-1]) for i in range(W.cols))


def test_mat_mul_and_det():
    A = RingMatrix(R12, [[2, 0], [3, 4]])
    B = RingMatrix(R12, [[1, 1], [0, 11]])
    assert A.det() == R12(8)
    assert not mat_is_invertible(A)
    assert B.det() == R12(11)
    assert mat_is_invertible(B)
    assert mat_mul(B, mat_inverse(B)) == RingMatrix.identity(R12, 2)
    with pytest.raises(NotInvertible):
        mat_inverse(A)


def test_mat_mul_shape_check():
    with pytest.raises(ValueError):
        mat_mul(RingMatrix(Z, [[1, 2]]), RingMatrix(Z, [[1, 2]]))


def test_det_quadratic_and_product():
    Q = Quadratic(-5)
    w = Q.omega
    A = RingMatrix(Q, [[2, 1 + w], [1 - w, 3]])
    assert A.det() == Q(0)
    P = Product(Z, Residue(5))
    M = RingMatrix(P, [[(2, 1), (0, 3)], [(1, 1), (1, 2)]])
    assert M.det() == P((2, 4))


def test_hermite_examples():
    P, T = hermite_reduce(RingMatrix(Z, [[4], [6]]))
    assert T == RingMatrix(Z, [[2], [0]])
    assert P @ RingMatrix(Z, [[4], [6]]) == T
    assert mat_is_invertible(P)
    A = RingMatrix(R12, [[2, 0], [3, 4]])
    P, T = hermite_reduce(A)
    assert P @ A == T
    assert T[0, 0] == R12(1) and T[1, 0] == R12(0)
    P, T = hermite_reduce(RingMatrix.zeros(Z, 2, 2))
    assert T.is_zero() and P == RingMatrix.identity(Z, 2)


def test_hermite_agrees_with_classical_hnf():
    rng = random.Random(5)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]
        P, T = hermite_reduce(RingMatrix(Z, rows))
        assert mat_is_invertible(P)
        assert P @ RingMatrix(Z, rows) == T
        ours = sorted(tuple(x.value for x in r) for r in T.rows if any(x.value for x in r))
        assert ours == sympy_row_hnf(rows, n)


def test_content_of_matrix():
    assert content_of_matrix(RingMatrix(Z, [[2, 4], [6, 8]])) == FinGenIdeal(Z, [2])
    assert content_of_matrix(RingMatrix(R12, [[2, 0], [3, 4]])).is_unit_ideal()
    assert content_of_matrix(RingMatrix(Z, [[0]])).is_zero()


def test_lattice_kernel_matches_classical_hnf():
    rng = random.Random(9)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-40, 40) for _ in range(n)] for _ in range(m)]
        assert sorted(map(tuple, _hnf_py.hnf(rows, n))) == sympy_row_hnf(rows, n)


@pytest.mark.skipif(lattice._hnf_ext is None, reason="compiled kernel not built")
def test_compiled_kernel_matches_python():
    rng = random.Random(13)
    for _ in range(300):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-30, 30) for _ in range(n)] for _ in range(m)]
        try:
            fast = lattice._hnf_ext.hnf(rows, n)
        except OverflowError:
            continue
        assert fast == _hnf_py.hnf(rows, n)


@pytest.mark.skipif(lattice._hnf_ext is None, reason="compiled kernel not built")
def test_overflow_falls_back_to_python():
    big = 2 ** 62
    rows = [[big, 3], [big - 1, 5], [7, big]]
    with pytest.raises(OverflowError):
        lattice._hnf_ext.hnf(rows, 2)
    assert lattice.hnf(rows, 2) == _hnf_py.hnf(rows, 2)


def test_lattice_helpers():
    basis = lattice.hnf([[2, 0], [0, 3]], 2)
    assert lattice.contains(basis, [4, 9])
    assert not lattice.contains(basis, [1, 0])
    assert lattice.index(basis, 2) == 6
    full = lattice.hnf([[1, 0], [0, 1]], 2)
    assert len(list(lattice.coset_reps(full, basis, 2))) == 6
    assert lattice.solve([[2, 0], [0, 3]], [4, 9], 2) == [2, 3]
