"""Decomposition M = R^n/H = tM + P with torsion chain and projective invariants.

tM is a sum of cyclic modules R/I_1 + ... + R/I_m with I_1 >= ... >= I_m
proper invertible ideals; the projective part is described by its rank
idempotents, the ranks on them, and a Steinitz representative.
"""
from dataclasses import dataclass, field
from itertools import islice

from . import lattice, modules
from .errors import PreconditionError, RingMismatch, SearchExhausted, UnsupportedRing
from .ideals import (FinGenIdeal, colon, faithful_completion, ideal_inverse,
                     is_faithful, is_isomorphic, is_principal)
from .matrices import RingMatrix
from .projective import projective_normalize, split_projective, steinitz_from_projector
from .rings import Idempotent, Product, Quadratic
from .stacked import stacked_bases
from .summands import scale

PAIR_SEARCH_LIMIT = 100_000


@dataclass
class PresentedModule:
    ring: object
    n: int
    H: RingMatrix

    def __post_init__(self):
        if self.H.nrows != self.n:
            raise PreconditionError(f"H has {self.H.nrows} rows, expected {self.n}")


@dataclass
class Decomposition:
    ring: object
    n: int
    torsion_chain: list
    rank_idempotents: list
    ranks: list
    steinitz: FinGenIdeal
    stacked: object = None
    projective_pieces: list = field(default_factory=list)
    torsion_projector: RingMatrix = None
    raw_torsion: list = field(default_factory=list)

    @property
    def free_rank(self):
        """Rank of the projective part when it is constant, else None."""
        if not self.ranks:
            return 0
        if len(self.ranks) == 1 and self.rank_idempotents[0] == self.ring.one:
            return self.ranks[0]
        return None

    def check(self):
        errs = []
        R = self.ring
        for A, B in zip(self.torsion_chain, self.torsion_chain[1:]):
            if not A >= B:
                errs.append(f"chain broken: {A} does not contain {B}")
        for I in self.torsion_chain:
            if I.is_unit_ideal():
                errs.append(f"{I} is not proper")
            try:
                ideal_inverse(I)
            except Exception:
                errs.append(f"{I} is not invertible")
        es = self.rank_idempotents
        for i, e in enumerate(es):
            for f in es[i + 1:]:
                if e * f:
                    errs.append(f"idempotents {e}, {f} are not orthogonal")
        if any(a >= b for a, b in zip(self.ranks, self.ranks[1:])):
            errs.append("ranks are not strictly increasing")
        if any(k <= 0 for k in self.ranks):
            errs.append("ranks must be positive")
        return errs


def chain_normalize(cyclics):
    """I_1 >= ... >= I_m with the same direct sum of cyclic quotients."""
    L = [I for I in cyclics if not I.is_unit_ideal()]
    for _ in range(len(L) * len(L) + 1):
        changed = False
        for i in range(len(L) - 1):
            A, B = L[i], L[i + 1]
            if not A >= B:
                L[i], L[i + 1] = A + B, A.intersect(B)
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("chain exchange did not converge")
    return [I for I in L if not I.is_unit_ideal()]


def _ideal_reps(I, modulo):
    """Elements of I: canonical generators first, then coset representatives of I/modulo."""
    R = I.ring
    seen = set()
    for g in list(I.gens) + list(I.canonical_gens()):
        if g not in seen:
            seen.add(g)
            yield g
    big = [list(r) for r in I.basis]
    small = [list(r) for r in modulo.basis]
    for c in lattice.coset_reps(big, small, R.zrank):
        g = R.from_coords(c)
        if g not in seen:
            seen.add(g)
            yield g


def cyclic_quotient_rep(I, J):
    """g in I with I == Rg + JI, so that g generates I/JI (which is R/J)."""
    JI = J * I
    for g in islice(_ideal_reps(I, JI), PAIR_SEARCH_LIMIT):
        if FinGenIdeal(I.ring, [g]) + JI == I:
            return g
    raise SearchExhausted(f"no generator of {I} modulo {JI}")


@dataclass
class PairReduction:
    """Isomorphism I + J -> R + IJ, (x, y) -> ((b/a)x + y, -j0 x + i0 y)."""

    I: FinGenIdeal
    J: FinGenIdeal
    a: object
    b: object
    i0: object
    j0: object
    product: FinGenIdeal

    def phi(self, x, y):
        t = modules.divide(self.b * x, self.a)
        return t + y, -(self.j0 * x) + self.i0 * y

    def psi(self, r, z):
        t = modules.divide(self.b * z, self.a)
        return self.i0 * r - z, self.j0 * r + t

    def matrix(self):
        """Entries of phi as fractions (numerator, denominator)."""
        R = self.a.ring
        return [[(self.b, self.a), (R.one, R.one)], [(-self.j0, R.one), (self.i0, R.one)]]

    def verify(self):
        R = self.I.ring
        src = [(g, R.zero) for g in self.I.gens] + [(R.zero, g) for g in self.J.gens]
        dst = [(R.one, R.zero)] + [(R.zero, g) for g in self.product.gens]
        for x, y in src:
            r, z = self.phi(x, y)
            if not self.product.contains(z):
                return False, f"phi({x}, {y}) second coordinate {z} not in IJ"
            if self.psi(r, z) != (x, y):
                return False, f"psi(phi({x}, {y})) != ({x}, {y})"
        for r, z in dst:
            x, y = self.psi(r, z)
            if not (self.I.contains(x) and self.J.contains(y)):
                return False, f"psi({r}, {z}) = ({x}, {y}) leaves I + J"
            if self.phi(x, y) != (r, z):
                return False, f"phi(psi({r}, {z})) != ({r}, {z})"
        # det of the fractional matrix is (b/a) i0 + j0 == 1
        if self.b * self.i0 + self.a * self.j0 != self.a:
            return False, "determinant is not 1"
        return True, None


def pair_reduce(I, J, a=None):
    """PairReduction with (b/a) I + J == R, witnessing I + J = R + IJ."""
    I._check(J)
    R = I.ring
    ideal_inverse(I)
    ideal_inverse(J)
    if a is None:
        _, a = is_faithful(I)
    aR = FinGenIdeal(R, [a])
    aIinv = colon(aR, I)
    for b in islice(_ideal_reps(aIinv, aIinv * J), PAIR_SEARCH_LIMIT):
        if I * b + J * a == aR:
            sol = modules.solve_combination([[b * g] for g in I.zgens] + [[a * h] for h in J.zgens], [a])
            k = len(I.zgens)
            i0 = sum((c * g for c, g in zip(sol[:k], I.zgens)), R.zero)
            j0 = sum((c * h for c, h in zip(sol[k:], J.zgens)), R.zero)
            red = PairReduction(I, J, a, b, i0, j0, I * J)
            ok, why = red.verify()
            if not ok:
                raise AssertionError(why)
            return red
    raise SearchExhausted(f"no pair reduction witness for {I}, {J}")


def torsion_ideals(sb):
    """I_k = (J_1...J_k) eps_k + R(1 - eps_k)."""
    R = sb.ring
    out = []
    for K, e in zip(sb.cumulative_ideals(), sb.epsilons):
        out.append(FinGenIdeal(R, [g * e for g in K.zgens] + [R.one - e]))
    return out


def _ideals_of_norm(R, N):
    """Ideals of a quadratic order of index N, in HNF order."""
    for x1 in range(1, N + 1):
        if N % x1:
            continue
        y2 = N // x1
        for y1 in range(y2):
            I = FinGenIdeal(R, [R.from_coords([x1, y1]), R.from_coords([0, y2])])
            if I.index() == N and I.basis == ((x1, y1), (0, y2)):
                yield I


def _steinitz_canonical(S, norm_bound=200):
    """Smallest-norm representative of the ideal class of S (unit if principal)."""
    R = S.ring
    if isinstance(R, Product):
        parts = [_steinitz_canonical(c, norm_bound) for c in S.components()]
        return FinGenIdeal(R, [R.embed(i, g) for i, c in enumerate(parts) for g in c.gens])
    if is_principal(S) is not None:
        return FinGenIdeal.unit(R)
    if isinstance(R, Quadratic):
        for N in range(2, norm_bound + 1):
            for I in _ideals_of_norm(R, N):
                if is_isomorphic(S, I)[0]:
                    return I
    return S


def decompose(module, H=None):
    """Decomposition of R^n / span(columns of H); pp rings only."""
    if H is not None:
        module = PresentedModule(H.ring, module, H)
    R = module.ring
    if not R.is_pp():
        raise UnsupportedRing(f"decompose requires a pp ring; {R} is not (use diagonalize)")
    sb = stacked_bases(module.n, module.H, ring=R)
    raw = torsion_ideals(sb)
    chain = chain_normalize(raw)
    pi = sb.complement
    pieces = split_projective(pi)
    if pieces:
        es, ranks, steinitz = projective_normalize(pieces)
    else:
        es, ranks, steinitz = [], [], FinGenIdeal.unit(R)
    steinitz = _steinitz_canonical(steinitz)
    sigma = RingMatrix.identity(R, module.n) - pi
    out = Decomposition(R, module.n, chain, es, ranks, steinitz, sb, pieces, sigma, raw)
    errs = out.check()
    if errs:
        raise AssertionError("decomposition self-check failed: " + "; ".join(errs))
    return out


def invariants_equal(D1, D2):
    if D1.ring != D2.ring:
        raise RingMismatch(f"{D1.ring} vs {D2.ring}")
    if D1.torsion_chain != D2.torsion_chain:
        return False
    if sorted(zip(map(str, D1.rank_idempotents), D1.ranks)) != \
            sorted(zip(map(str, D2.rank_idempotents), D2.ranks)):
        return False
    if D1.steinitz == D2.steinitz:
        return True
    return is_isomorphic(D1.steinitz, D2.steinitz)[0]


def steinitz_check(D):
    """Independent Steinitz representative from minors of the complement projector."""
    ranks = {k: e for e, k in zip(D.rank_idempotents, D.ranks)}
    if not ranks:
        return True
    S = steinitz_from_projector(D.stacked.complement, ranks)
    return S == D.steinitz or is_isomorphic(S, D.steinitz)[0]
