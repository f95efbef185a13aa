"""Rank-one projective summands: the unit-content-summand construction.

A summand is carried as generators plus an idempotent projector matrix
whose image is the summand; the projector is the certificate that the
submodule really is a direct summand of R^n.
"""
import itertools
import math
from dataclasses import dataclass, field

from . import modules
from .errors import PreconditionError, SearchExhausted
from .ideals import FinGenIdeal, content
from .matrices import RingMatrix
from .rings import (Element, Idempotent, Integers, Product, factor, generates_unit_ideal,
                    support_idempotent)

SEARCH_LIMIT = 200_000
# direct enumeration tried before splitting the search prime by prime
QUICK_LIMIT = 500


def scale(v, a):
    return [a * x for x in v]


def add(v, w):
    return [x + y for x, y in zip(v, w)]


def is_zero_vec(v):
    return all(x.is_zero() for x in v)


def outer(R, u, alpha):
    return RingMatrix(R, [[x * y for y in alpha] for x in u])


@dataclass
class RankOneSummand:
    """Rank-one projective direct summand U of R^n with projector onto U."""

    ring: object
    gens: list
    projector: RingMatrix
    support: Idempotent
    pieces: list = field(default_factory=list)

    @property
    def n(self):
        return self.projector.nrows


def functionals(vectors, target):
    """Row vectors alpha_k with sum_k alpha_k . vectors[k] == target."""
    R = target.ring
    n = len(vectors[0])
    flat = [[x] for v in vectors for x in v]
    sol = modules.solve_combination(flat, [target])
    if sol is None:
        raise PreconditionError(f"{target} is not in the content ideal")
    return [sol[k * n:(k + 1) * n] for k in range(len(vectors))]


def _covers(R, vectors, e):
    """Does c(vectors) + R(1-e) == R, i.e. c(vectors) contains e?"""
    coords = [x for v in vectors for x in v]
    return generates_unit_ideal(coords + [R.one - e], R)


def _combos(n, reps):
    """Coefficient vectors over ``reps`` by increasing number of nonzero entries."""
    nonzero = [t for t in reps if t]
    zero = reps[0] * 0 if reps else None
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            for ts in itertools.product(nonzero, repeat=size):
                t = [zero] * n
                for k, c in zip(subset, ts):
                    t[k] = c
                yield t


def _combine(R, gens, t):
    n = len(gens[0])
    v = [R.zero] * n
    for c, g in zip(t, gens):
        if c:
            v = add(v, scale(g, c))
    return v


def _search(R, gens, reps, test, what, limit=SEARCH_LIMIT):
    for count, t in enumerate(_combos(len(gens), reps)):
        if count > limit:
            break
        if test(_combine(R, gens, t)):
            return t
    raise SearchExhausted(f"no {what} found; instance is not local-global")


def _crt_weights(qs):
    """Integers E_q with E_q = 1 mod q and E_q = 0 mod the other primes."""
    N = math.prod(qs)
    return {q: (N // q) * pow(N // q, -1, q) % N for q in qs}


def _prime_split(R, I):
    """Rational primes below the maximal ideals containing I (a nonzero ideal of a domain)."""
    from .ideals import _nzd_witness
    k = _nzd_witness(I)
    return [p for p, _ in factor(abs(k.value if isinstance(R, Integers) else k.value[0]))]


def _complement_coeffs(R, x, Mgens, e):
    """Coefficients t with y = sum t_k Mgens_k satisfying c(x) + c(y) = Re."""
    if isinstance(R, Product):
        parts = []
        for i, f in enumerate(R.factors):
            if e.value[i] == f.zero.value:
                parts.append([f.zero] * len(Mgens))
                continue
            xi = [Element(f, a.value[i]) for a in x]
            Mi = [[Element(f, a.value[i]) for a in v] for v in Mgens]
            parts.append(_complement_coeffs(f, xi, Mi, Element(f, e.value[i])))
        return [Element(R, tuple(p[k].value for p in parts)) for k in range(len(Mgens))]
    zeros = [R.zero] * len(Mgens)
    if _covers(R, [x], e):
        return zeros
    if R.is_domain():
        cx = FinGenIdeal(R, list(x))
        try:
            return _search(R, Mgens, list(itertools.islice(cx.residues(), QUICK_LIMIT)),
                           lambda y: _covers(R, [x, y], e), "", limit=QUICK_LIMIT)
        except SearchExhausted:
            pass
        qs = _prime_split(R, cx)
        weights = _crt_weights(qs)
        t = zeros
        for q in qs:
            local = FinGenIdeal(R, list(x) + [R(q)])
            reps = list(local.residues())
            tq = _search(R, Mgens, reps,
                         lambda y: generates_unit_ideal(list(x) + y + [R(q)], R),
                         f"complementary vector modulo {q}")
            t = [a + b * weights[q] for a, b in zip(t, tq)]
        return t
    quotient = FinGenIdeal(R, list(x) + [R.one - e])
    return _search(R, Mgens, list(quotient.residues()),
                   lambda y: _covers(R, [x, y], e), "complementary vector")


def _shift_coeff(R, x, y, I, f):
    """a with c(f(x + a y)) = Rf, given minors ideal I with support f."""
    if isinstance(R, Product):
        parts = []
        for i, F in enumerate(R.factors):
            if f.value[i] == F.zero.value:
                parts.append(F.zero.value)
                continue
            comp = lambda v: [Element(F, a.value[i]) for a in v]
            Ii = FinGenIdeal(F, [Element(F, g.value[i]) for g in I.zgens])
            parts.append(_shift_coeff(F, comp(x), comp(y), Ii, Element(F, f.value[i])).value)
        return Element(R, tuple(parts))

    def shifted(a):
        return scale(add(x, scale(y, a)), f)

    if R.is_domain():
        for a in itertools.islice(I.residues(), QUICK_LIMIT):
            if _covers(R, [shifted(a)], f):
                return a
        qs = _prime_split(R, I)
        weights = _crt_weights(qs)
        a = R.zero
        for q in qs:
            local = FinGenIdeal(R, list(I.zgens) + [R(q)])
            for aq in local.residues():
                if generates_unit_ideal(add(x, scale(y, aq)) + list(local.zgens), R):
                    a = a + aq * weights[q]
                    break
            else:
                raise SearchExhausted(f"no unit-content shift modulo {q}")
        if not _covers(R, [shifted(a)], f):
            raise AssertionError("CRT shift does not have unit content")
        return a
    quotient = FinGenIdeal(R, list(I.zgens) + [R.one - f])
    for a in quotient.residues():
        if _covers(R, [shifted(a)], f):
            return a
    raise SearchExhausted("no unit-content shift x + a*y found")


def _two_minors(x, y):
    n = len(x)
    return [x[i] * y[j] - x[j] * y[i] for i in range(n) for j in range(i + 1, n)]


def _cyclic_piece(R, u, e):
    (alpha,) = functionals([u], e)
    return [u], outer(R, u, alpha)


def block_summand(R, x, Mgens, e):
    """Pieces (gens, projector) of a rank-one summand of eR^n inside e*M.

    ``x`` lies in e*M and c(x) is faithful over Re.
    """
    if _covers(R, [x], e):
        return [_cyclic_piece(R, x, e)]
    t = _complement_coeffs(R, x, Mgens, e)
    y = scale(_combine(R, Mgens, t), e)
    if not _covers(R, [x, y], e):
        raise AssertionError("complementary vector check failed")
    minors = FinGenIdeal(R, _two_minors(x, y) or [R.zero])
    f = support_idempotent(minors.zgens, R) * e
    g = e - f
    pieces = []
    if g:
        xs, ys = scale(x, g), scale(y, g)
        alpha, beta = functionals([x, y], e)
        p = outer(R, xs, alpha) + outer(R, ys, beta)
        pieces.append(([v for v in (xs, ys) if not is_zero_vec(v)], p))
    if f:
        a = _shift_coeff(R, x, y, minors, Idempotent(f))
        pieces.append(_cyclic_piece(R, scale(add(x, scale(y, a)), f), f))
    return pieces


def orthogonal_blocks(eps, coeffs):
    """(index, e_j) pairs of the orthogonalisation, zero blocks dropped."""
    R = eps[0].ring
    out = []
    rest = R.one
    for j, (c, e) in enumerate(zip(coeffs, eps)):
        s = support_idempotent([c * e], R)
        ej = s * rest
        rest = rest * (R.one - ej)
        if ej:
            out.append((j, Idempotent(ej)))
    return out


def ucs_summand(M_gens, n=None, support=None):
    """A rank-one summand of (support)*R^n contained in the span of M_gens.

    Requires c(M) == R*support (unit content when support is 1).
    """
    M_gens = [list(v) for v in M_gens if not is_zero_vec(v)]
    if not M_gens:
        raise PreconditionError("content is not unit: module is zero")
    R = M_gens[0][0].ring
    n = n or len(M_gens[0])
    e0 = Idempotent(support if support is not None else R.one)
    c = content(M_gens, R)
    if c != FinGenIdeal(R, [e0]):
        raise PreconditionError(f"content {c} is not R*{e0}")
    for v in M_gens:
        if _covers(R, [v], e0):
            gens, proj = _cyclic_piece(R, v, e0)
            return RankOneSummand(R, gens, proj, e0, [(gens, proj)])
    # a_j in c(x_j) with sum a_j == e0
    alphas = functionals(M_gens, e0)
    a = [sum((al * x for al, x in zip(alpha, v)), R.zero) for alpha, v in zip(alphas, M_gens)]
    eps = [R.one - e0] + [support_idempotent(v, R) for v in M_gens]
    coeffs = [R.one] + a
    blocks = [(j - 1, e) for j, e in orthogonal_blocks(eps, coeffs) if j > 0]
    gens = []
    proj = RingMatrix.zeros(R, n, n)
    pieces = []
    for j, e in blocks:
        x = scale(M_gens[j], e)
        Me = [scale(v, e) for v in M_gens]
        for pg, pp in block_summand(R, x, Me, e):
            gens.extend(pg)
            proj = proj + pp
            pieces.append((pg, pp))
    return RankOneSummand(R, gens, proj, e0, pieces)


def check_summand(summand, M_gens=None):
    """Exact certificate: projector idempotent, image == span(gens) (subset of M)."""
    R = summand.ring
    p = summand.projector
    n = p.nrows
    if p @ p != p:
        return False, "projector is not idempotent"
    for g in summand.gens:
        if p.apply(g) != list(g):
            return False, f"projector does not fix generator {g}"
    span = modules.module_lattice(R, summand.gens, n) if summand.gens else []
    for col in p.columns():
        if not modules.contains(R, span, col):
            return False, "projector image leaves the summand"
    if M_gens is not None:
        Mb = modules.module_lattice(R, M_gens, n)
        for g in summand.gens:
            if not modules.contains(R, Mb, g):
                return False, f"generator {g} is not in M"
    if not _rank_one(p, summand.support):
        return False, "summand does not have rank one on its support"
    return True, None


def _rank_one(p, e):
    from .projective import rank_idempotents_of_projector
    ranks = rank_idempotents_of_projector(p)
    return ranks.get(1) == e and all(k in (0, 1) for k in ranks)
