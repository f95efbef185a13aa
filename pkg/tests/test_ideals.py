import random

import pytest

from stacked_bases.acceptance import random_ideal
from stacked_bases.errors import NotInvertible
from stacked_bases.ideals import (FinGenIdeal, FractionalIdeal, content, faithful_completion,
                                  ideal_intersect, ideal_inverse, ideal_product, ideal_sum,
                                  is_faithful, is_isomorphic, is_principal, normalize)
from stacked_bases.rings import Integers, Product, Quadratic, Residue

Z = Integers()
Q5 = Quadratic(-5)
w = Q5.omega
ZZ = Product(Z, Z)
R6 = Residue(6)

P2 = FinGenIdeal(Q5, [2, 1 + w])
P3 = FinGenIdeal(Q5, [3, 1 + w])
P3bar = FinGenIdeal(Q5, [3, 1 - w])


def I(R, *gens):
    return FinGenIdeal(R, list(gens))


def test_normal_forms():
    assert normalize([Z(4), Z(6)]).normal_form == 2
    assert P2.normal_form == ((1, 1), (0, 2))
    assert P2.norm() == 2
    assert I(ZZ, (2, 0), (0, 3)).normal_form == (2, 3)
    assert Residue(12)(10) in [g for g in I(Residue(12), 10).gens]
    assert I(Residue(12), 10).normal_form == 2


def test_normalize_idempotent():
    for J in (P2, P3, P2 * P3, I(ZZ, (4, 6))):
        again = FinGenIdeal(J.ring, J.canonical_gens())
        assert again.normal_form == J.normal_form


def test_sum_product_intersect():
    assert P2 * P2 == I(Q5, 2)
    assert (P2 * P2).norm() == 4
    assert P3 * P3bar == I(Q5, 3)
    assert ideal_sum(I(Z, 4), I(Z, 6)) == I(Z, 2)
    assert ideal_intersect(I(Z, 4), I(Z, 6)) == I(Z, 12)
    assert ideal_product(I(Z, 4), I(Z, 6)) == I(Z, 24)
    R12 = Residue(12)
    assert ideal_intersect(I(R12, 4), I(R12, 6)) == I(R12, 0)


def test_content_examples():
    assert content([[Z(3), Z(0), Z(6)]]) == I(Z, 3)
    assert content([[Z(2), Z(6)], [Z(4), Z(8)]]) == I(Z, 2)
    assert content([[ZZ((1, 1)), ZZ((0, 0))], [ZZ((0, 0)), ZZ((1, 1))]]).is_unit_ideal()


def test_faithful_examples():
    assert is_faithful(I(R6, 2)) == (False, None)
    ok, wit = is_faithful(P2)
    assert ok and wit is not None and P2.contains(wit)
    assert not is_faithful(I(ZZ, (2, 0)))[0]


def test_faithful_completion_examples():
    assert faithful_completion(I(R6, 2)).is_unit_ideal()
    assert faithful_completion(I(Z, 0)).is_unit_ideal()
    assert faithful_completion(I(ZZ, (2, 0))) == I(ZZ, (2, 1))
    # already faithful ideals are unchanged
    assert faithful_completion(P2) == P2


def test_inverse_examples():
    inv = ideal_inverse(I(Z, 2))
    assert inv == FractionalIdeal(I(Z, 1), Z(2))
    assert ideal_inverse(P2) == FractionalIdeal(P2, Q5(2))
    assert (P2 * ideal_inverse(P2)).to_ideal().is_unit_ideal()
    with pytest.raises(NotInvertible):
        ideal_inverse(I(ZZ, (2, 0)))


def test_principal_examples():
    assert is_principal(P2) is None
    assert is_principal(I(Z, 3)) == Z(3)
    g = is_principal(P2 * P3bar)
    assert g is not None and I(Q5, g) == P2 * P3bar
    assert Q5.norm(g) == 6


def test_isomorphic_examples():
    ok, (a, b) = is_isomorphic(P2, P3)
    assert ok
    assert P2 * I(Q5, a) == P3 * I(Q5, b)
    assert is_isomorphic(P2, FinGenIdeal.unit(Q5)) == (False, None)
    ok, (a, b) = is_isomorphic(I(Z, 4), I(Z, 9))
    assert ok and I(Z, 4) * I(Z, a) == I(Z, 9) * I(Z, b)


def test_norm_multiplicative_and_inverse():
    rng = random.Random(7)
    for _ in range(30):
        A = random_ideal(rng, Q5)
        B = random_ideal(rng, Q5)
        assert (A * B).norm() == A.norm() * B.norm()
        assert (A * ideal_inverse(A)).to_ideal().is_unit_ideal()


def test_modular_law():
    rng = random.Random(11)
    for _ in range(20):
        A = random_ideal(rng, Q5)
        B = random_ideal(rng, Q5)
        assert A <= A + B
        assert A * B <= A.intersect(B)
        assert A.intersect(B) * (A + B) == A * B


def test_content_unit_iff_completion_unit():
    for vecs in ([[Z(2), Z(3)]], [[Z(2), Z(4)]], [[R6(2)], [R6(3)]], [[R6(2)]]):
        c = content(vecs)
        assert c.is_unit_ideal() == (faithful_completion(c).is_unit_ideal() and c.is_unit_ideal())


def test_check_rejects_mixed_rings():
    with pytest.raises(ValueError):
        I(Residue(4), 2) + I(Residue(6), 2)
