import dataclasses
import itertools

import pytest

from stacked_bases.decomposition import PresentedModule, decompose
from stacked_bases.diagonal import diagonalize, fitting_ideals
from stacked_bases.errors import UnsupportedRing
from stacked_bases.ideals import FinGenIdeal
from stacked_bases.matrices import RingMatrix, mat_is_invertible
from stacked_bases.oracles import (check_pp_lemma, snf_oracle, verify_decomposition,
                                   verify_diagonal)
from stacked_bases.rings import Integers, Product, Quadratic, Residue

Z = Integers()
Q5 = Quadratic(-5)
w = Q5.omega
R12 = Residue(12)


def test_snf_oracle():
    assert snf_oracle([[2, 0], [0, 3]]) == (1, 6)
    assert snf_oracle([[2, 4], [6, 8]]) == (2, 4)
    assert snf_oracle([[0, 0], [0, 0]]) == ()


@pytest.mark.parametrize("n", [2, 6, 30])
def test_pp_lemma_passes_on_squarefree(n):
    assert check_pp_lemma(Residue(n)).passed


def brute_pp(R):
    elems = list(R.elements())
    ids = [e for e in elems if e * e == e]
    for a in elems:
        ann = {x for x in elems if x * a == R.zero}
        if not any(ann == {r * e for r in elems} for e in ids):
            return False
    return True


@pytest.mark.parametrize("R", [Residue(4), Residue(12), Product(Residue(4), Residue(9))])
def test_pp_lemma_oracle_agrees_with_brute_force(R):
    # ann(2) = (2) in Z/4 is not generated by an idempotent, so these rings are not pp
    report = check_pp_lemma(R)
    assert report.passed == brute_pp(R) == R.is_pp()
    if not report.passed:
        assert report.witness["check"] == "annihilator-idempotent"


def test_diagonalize_examples():
    form = diagonalize(RingMatrix(R12, [[2, 0], [3, 4]]))
    assert form.diagonal == [R12(1), R12(4)]
    assert form.P @ form.A @ form.Q == form.D
    assert verify_diagonal(form).passed
    form = diagonalize(RingMatrix(R12, [[2, 0], [0, 4]]))
    assert form.diagonal == [R12(2), R12(4)]
    form = diagonalize(RingMatrix(Z, [[2, 4], [6, 8]]))
    assert form.diagonal == [Z(2), Z(4)]


def test_diagonalize_rejects_unsupported():
    with pytest.raises(UnsupportedRing):
        diagonalize(RingMatrix(Q5, [[2, 1 + w]]))


@pytest.mark.parametrize("R", [Residue(4), Residue(8), Product(Residue(12), Residue(5))])
def test_diagonalize_exhaustive_small(R):
    elems = list(R.elements())
    step = max(1, len(elems) ** 4 // 600)
    for k, entries in enumerate(itertools.product(elems, repeat=4)):
        if k % step:
            continue
        A = RingMatrix(R, [list(entries[:2]), list(entries[2:])])
        f = diagonalize(A)
        assert mat_is_invertible(f.P) and mat_is_invertible(f.Q)
        assert f.P @ A @ f.Q == f.D and f.D.is_diagonal()
        d1, d2 = f.diagonal
        assert FinGenIdeal(R, [d2]) <= FinGenIdeal(R, [d1])
        assert fitting_ideals(A) == fitting_ideals(f.D)


def test_verify_decomposition_detects_injected_chain():
    H = RingMatrix(Z, [[2, 0], [0, 3], [0, 0]])
    module = PresentedModule(Z, 3, H)
    D = decompose(module)
    assert verify_decomposition(module, D).passed
    bad = dataclasses.replace(D, torsion_chain=[FinGenIdeal(Z, [2]), FinGenIdeal(Z, [6])])
    report = verify_decomposition(module, bad)
    assert not report.passed


def test_verify_decomposition_quadratic_quotient():
    H = RingMatrix(Q5, [[2, 1 + w]])
    module = PresentedModule(Q5, 1, H)
    assert verify_decomposition(module, decompose(module)).passed
