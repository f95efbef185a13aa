import random

import pytest

from stacked_bases.acceptance import random_int_matrix, random_invertible
from stacked_bases.decomposition import (PresentedModule, chain_normalize, cyclic_quotient_rep,
                                         decompose, invariants_equal, pair_reduce, steinitz_check)
from stacked_bases.errors import NotInvertible, UnsupportedRing
from stacked_bases.ideals import FinGenIdeal
from stacked_bases.matrices import RingMatrix
from stacked_bases.oracles import snf_oracle, verify_decomposition, verify_torsion_split
from stacked_bases.projective import projective_normalize
from stacked_bases.rings import Integers, Product, Quadratic, Residue

Z = Integers()
Q5 = Quadratic(-5)
w = Q5.omega
ZZ = Product(Z, Z)
P2 = FinGenIdeal(Q5, [2, 1 + w])


def zi(*gs):
    return [FinGenIdeal(Z, [g]) for g in gs]


def test_chain_normalize():
    assert chain_normalize(zi(4, 6)) == zi(2, 12)
    assert chain_normalize(zi(2, 3)) == zi(6)
    assert chain_normalize(zi(5)) == zi(5)
    assert chain_normalize(zi(1, 1)) == []


def test_cyclic_quotient_rep():
    g = cyclic_quotient_rep(P2, FinGenIdeal(Q5, [3]))
    assert FinGenIdeal(Q5, [g]) + P2 * FinGenIdeal(Q5, [3]) == P2
    assert cyclic_quotient_rep(FinGenIdeal(Z, [4]), FinGenIdeal(Z, [3])) == Z(4)
    assert cyclic_quotient_rep(FinGenIdeal.unit(Q5), P2) == Q5(1)


def test_pair_reduce_p2_p2():
    red = pair_reduce(P2, P2)
    assert red.product == FinGenIdeal(Q5, [2])
    assert red.verify() == (True, None)
    assert P2 * red.b + P2 * red.a == FinGenIdeal(Q5, [red.a])


def test_pair_reduce_integers_and_unit():
    red = pair_reduce(FinGenIdeal(Z, [2]), FinGenIdeal(Z, [3]))
    assert red.product == FinGenIdeal(Z, [6])
    assert red.verify()[0]
    red = pair_reduce(FinGenIdeal.unit(Q5), P2)
    assert red.b == red.a and red.product == P2


def test_pair_reduce_rejects_non_invertible():
    with pytest.raises(NotInvertible):
        pair_reduce(FinGenIdeal(ZZ, [(2, 0)]), FinGenIdeal(ZZ, [(1, 1)]))


def test_projective_normalize():
    es, ranks, st = projective_normalize(zi(2, 3))
    assert es == [Z(1)] and ranks == [2] and st == FinGenIdeal(Z, [6])
    es, ranks, st = projective_normalize([P2, P2])
    assert ranks == [2] and st == FinGenIdeal(Q5, [2])
    one = FinGenIdeal.unit(ZZ)
    es, ranks, _ = projective_normalize([(one, ZZ((1, 0))), (one, ZZ((1, 1)))])
    assert dict(zip(ranks, es)) == {1: ZZ((0, 1)), 2: ZZ((1, 0))}


def test_decompose_examples():
    D = decompose(3, RingMatrix(Z, [[2, 0], [0, 3], [0, 0]]))
    assert D.torsion_chain == zi(6)
    assert D.rank_idempotents == [Z(1)] and D.ranks == [1]
    assert D.steinitz.is_unit_ideal()
    D = decompose(1, RingMatrix(Q5, [[2, 1 + w]]))
    assert D.torsion_chain == [P2] and D.ranks == []
    D = decompose(1, RingMatrix.zeros(Z, 1, 1))
    assert D.torsion_chain == [] and D.ranks == [1] and D.free_rank == 1


def test_decompose_rejects_non_pp():
    with pytest.raises(UnsupportedRing):
        decompose(1, RingMatrix(Residue(4), [[2]]))


def test_decompose_quadratic_non_free_projective():
    # R^2 / (2, 1+w)^T has projective part isomorphic to P2, not free
    D = decompose(2, RingMatrix(Q5, [[2], [1 + w]]))
    assert D.ranks == [1]
    assert not D.steinitz.is_unit_ideal()
    assert steinitz_check(D)


def test_invariants_equal_examples():
    rng = random.Random(2)
    H = RingMatrix(Z, [[2, 4], [6, 8]])
    P, Q = random_invertible(rng, Z, 2), random_invertible(rng, Z, 2)
    assert invariants_equal(decompose(2, H), decompose(2, P @ H @ Q))
    A = decompose(2, RingMatrix(Z, [[4, 0], [0, 6]]))
    B = decompose(2, RingMatrix(Z, [[2, 0], [0, 12]]))
    assert invariants_equal(A, B)
    assert not invariants_equal(decompose(1, RingMatrix(Z, [[2]])),
                                decompose(1, RingMatrix(Z, [[3]])))


def test_decompose_matches_snf_and_verifies():
    rng = random.Random(4)
    for _ in range(25):
        H = random_int_matrix(rng)
        A = [[x.value for x in row] for row in H.rows]
        D = decompose(H.nrows, H)
        factors = [d for d in snf_oracle(A) if d != 1]
        assert [I.normal_form for I in D.torsion_chain] == factors
        assert D.free_rank == H.nrows - len(snf_oracle(A))
        module = PresentedModule(Z, H.nrows, H)
        assert verify_decomposition(module, D).passed
        assert verify_torsion_split(module, D).passed


@pytest.mark.parametrize("R", [Residue(6), Residue(30), Product(Z, Residue(6))])
def test_decompose_finite_and_products(R):
    rng = random.Random(8)
    from stacked_bases.acceptance import random_matrix
    for _ in range(4):
        H = random_matrix(rng, R, 2, 2)
        module = PresentedModule(R, 2, H)
        D = decompose(module)
        assert verify_decomposition(module, D).passed
        assert verify_torsion_split(module, D).passed
