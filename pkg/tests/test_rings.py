import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stacked_bases.errors import PreconditionError, RingMismatch
from stacked_bases.rings import (Idempotent, Integers, Product, Quadratic, Residue,
                                 annihilator_idempotent, arith, bezout_data, idempotents,
                                 is_unit, is_zero_divisor, orthogonalize_idempotents,
                                 unit_shift)

Z = Integers()
Q5 = Quadratic(-5)
w = Q5.omega
ZZ = Product(Z, Z)
R12 = Residue(12)


def test_arith_examples():
    assert arith("mul", 1 + w, 1 - w) == Q5(6)
    assert arith("add", R12(7), R12(8)) == R12(3)
    assert arith("mul", ZZ((2, 3)), ZZ((0, 4))) == ZZ((0, 12))
    assert arith("neg", Residue(5)(2)) == Residue(5)(3)


def test_arith_rejects_mixed_rings():
    with pytest.raises(RingMismatch):
        arith("add", Residue(4)(1), Residue(6)(1))


def test_zero_ring_rejected():
    with pytest.raises(ValueError):
        Residue(1)


def test_is_unit_examples():
    assert is_unit(R12(11))
    assert not is_unit(ZZ((1, 2)))
    assert not is_unit(2 + w)
    assert is_unit(Z(-1))


def test_is_zero_divisor_examples():
    assert is_zero_divisor(R12(4))
    assert is_zero_divisor(ZZ((1, 0)))
    assert not is_zero_divisor(Z(3))


def test_annihilator_idempotent_examples():
    assert annihilator_idempotent([Z(5)]) == Z(0)
    assert annihilator_idempotent([Residue(6)(2)]) == Residue(6)(3)
    assert annihilator_idempotent([ZZ((1, 0))]) == ZZ((0, 1))


@pytest.mark.parametrize("n", [2, 6, 10, 30])
def test_annihilator_idempotent_exhaustive(n):
    # on pp residue rings: A*e == 0 and A + Re is faithful
    R = Residue(n)
    for a in R.elements():
        e = annihilator_idempotent([a])
        assert a * e == R.zero
        for r in R.elements():
            if r * a == R.zero and r * e == R.zero:
                assert r == R.zero


def test_bezout_examples():
    d, a1, b1, u, v = bezout_data(Z(4), Z(6))
    assert (d, a1, b1, u, v) == (Z(2), Z(2), Z(3), Z(-1), Z(1))
    d, a1, b1, u, v = bezout_data(R12(4), R12(6))
    assert a1 * d == R12(4) and b1 * d == R12(6)
    assert u * R12(4) + v * R12(6) == d
    assert d == R12(2)
    assert bezout_data(Z(0), Z(0))[:3] == (Z(0), Z(0), Z(0))


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_bezout_identity_integers(a, b):
    d, a1, b1, u, v = bezout_data(Z(a), Z(b))
    assert u * Z(a) + v * Z(b) == d
    assert a1 * d == Z(a) and b1 * d == Z(b)


@given(st.sampled_from([6, 12, 30, 36]), st.data())
def test_bezout_identity_residue(n, data):
    R = Residue(n)
    a = R(data.draw(st.integers(0, n - 1)))
    b = R(data.draw(st.integers(0, n - 1)))
    d, a1, b1, u, v = bezout_data(a, b)
    assert u * a + v * b == d
    assert a1 * d == a and b1 * d == b


def test_unit_shift_examples():
    # canonical enumeration returns the first hit: 2 + 1*3 = 5 is already a unit
    c = unit_shift(R12(2), R12(3))
    assert c == R12(1)
    assert is_unit(R12(2) + c * R12(3))
    assert unit_shift(Z(1), Z(0)) == Z(0)
    P = Product(R12, Residue(5))
    c = unit_shift(P((2, 1)), P((3, 0)))
    assert is_unit(P((2, 1)) + c * P((3, 0)))
    assert c.value[1] == 0


@pytest.mark.parametrize("n", [6, 12, 20])
def test_unit_shift_exhaustive(n):
    R = Residue(n)
    for a, b in itertools.product(R.elements(), repeat=2):
        if not is_unit_pair(R, a, b):
            continue
        c = unit_shift(a, b)
        assert is_unit(a + c * b)


def is_unit_pair(R, a, b):
    return any(is_unit(u * a + v * b) for u in R.elements() for v in R.elements())


def test_orthogonalize_examples():
    es, bs = orthogonalize_idempotents([Idempotent(Z(1))], [Z(1)])
    assert es == [Z(1)] and bs == [Z(1)]
    es, bs = orthogonalize_idempotents([Idempotent(ZZ((1, 1))), Idempotent(ZZ((0, 1)))],
                                       [ZZ((1, 0)), ZZ((0, 1))])
    assert es == [ZZ((1, 0)), ZZ((0, 1))]
    assert bs == [ZZ((1, 1)), ZZ((1, 1))]


def test_orthogonalize_rejects_bad_sum():
    with pytest.raises(PreconditionError):
        orthogonalize_idempotents([Idempotent(R12(9)), Idempotent(R12(4))], [R12(1), R12(2)])


def test_idempotent_constructor_checks():
    with pytest.raises(ValueError):
        Idempotent(R12(3))


def test_orthogonalize_properties():
    R = Residue(30)
    ids = idempotents(R)
    for e1, e2 in itertools.product(ids, repeat=2):
        for c1, c2 in itertools.product(R.elements(), repeat=2):
            if c1 * e1 + c2 * e2 != R.one:
                continue
            es, bs = orthogonalize_idempotents([Idempotent(e1), Idempotent(e2)], [c1, c2])
            assert sum((b * e for b, e in zip(bs, es)), R.zero) == R.one
            for i, j in itertools.combinations(range(len(es)), 2):
                assert es[i] * es[j] == R.zero
            break


def test_idempotents_of_zz():
    found = {e.value for e in idempotents(ZZ)}
    assert found == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_quadratic_basics():
    assert w * w == Q5(-5)
    assert Q5.norm(2 + w) == 9
    Q3 = Quadratic(-3)
    # omega = (1 + sqrt(-3))/2 satisfies w^2 = w - 1
    assert Q3.omega * Q3.omega == Q3.omega - 1
