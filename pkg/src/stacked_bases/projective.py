"""Finitely generated projective modules given as images of idempotent matrices.

The rank function of im(p) is read off the polynomial
det(I - p + X p) = sum_k r_k X^k, whose coefficients r_k are orthogonal
idempotents: r_k is the locus where the module has rank k.
"""
from functools import lru_cache

from .errors import PreconditionError
from .ideals import FinGenIdeal
from .matrices import RingMatrix
from .rings import Idempotent, support_idempotent


def _padd(p, q, R):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else R.zero) + (q[i] if i < len(q) else R.zero) for i in range(n)]


def _pmul(p, q, R):
    out = [R.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return out


def _pneg(p):
    return [-a for a in p]


def poly_det(entries, R):
    n = len(entries)

    @lru_cache(maxsize=None)
    def minor(i, cols):
        if i == n:
            return (R.one,)
        out = [R.zero]
        sign = 1
        for pos, c in enumerate(cols):
            x = entries[i][c]
            if any(x):
                term = _pmul(list(x), list(minor(i + 1, cols[:pos] + cols[pos + 1:])), R)
                out = _padd(out, term if sign > 0 else _pneg(term), R)
            sign = -sign
        return tuple(out)

    return list(minor(0, tuple(range(n))))


def rank_polynomial(p):
    R = p.ring
    n = p.nrows
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            c0 = (R.one if i == j else R.zero) - p[i, j]
            row.append((c0, p[i, j]))
        entries.append(row)
    return poly_det(entries, R)


def rank_idempotents_of_projector(p):
    """{rank k: idempotent r_k} over the nonzero r_k."""
    coeffs = rank_polynomial(p)
    out = {}
    for k, r in enumerate(coeffs):
        if r:
            out[k] = Idempotent(r)
    return out


def rank_idempotents_of_summands(supports, R):
    """Rank polynomial of a direct sum of rank-one modules with given supports."""
    poly = [R.one]
    for s in supports:
        poly = _pmul(poly, [R.one - s, s], R)
    return {k: Idempotent(r) for k, r in enumerate(poly) if r}


def rank_one_ideal(gens, support):
    """An ideal of R isomorphic to the rank-one projective span(gens).

    Coordinates are used blockwise: on each block the first coordinate
    functional with faithful image embeds the module.
    """
    R = support.ring
    n = len(gens[0])
    rest = support
    out = []
    for i in range(n):
        if not rest:
            break
        A = [v[i] * rest for v in gens]
        t = support_idempotent(A, R)
        if t:
            out.extend(a * t for a in A)
            rest = rest - t
    if rest:
        raise PreconditionError("generators do not span a rank-one module on the support")
    return FinGenIdeal(R, out or [R.zero])


def split_projective(p):
    """Decompose im(p) into rank-one summands: list of (ideal, support)."""
    from .summands import is_zero_vec, ucs_summand
    R = p.ring
    n = p.nrows
    out = []
    for _ in range(n + 1):
        cols = [c for c in p.columns() if not is_zero_vec(c)]
        if not cols:
            return out
        s = support_idempotent([x for c in cols for x in c], R)
        U = ucs_summand(cols, n, support=s)
        q = U.projector @ p
        p = p - q
        out.append((rank_one_ideal(U.gens, U.support), U.support))
    raise PreconditionError("projector did not exhaust in n rounds")


def projective_normalize(summands):
    """(rank idempotents, ranks, steinitz) for a direct sum of rank-one ideals.

    ``summands`` holds ideals or (ideal, support idempotent) pairs; the
    Steinitz representative is the product of J_k + R(1 - s_k).
    """
    pairs = []
    R = None
    for item in summands:
        if isinstance(item, FinGenIdeal):
            J, s = item, support_idempotent(item.zgens, item.ring)
        else:
            J, s = item
        R = J.ring
        pairs.append((J, s))
    if R is None:
        raise PreconditionError("projective_normalize needs the ring; pass at least one summand")
    ranks = rank_idempotents_of_summands([s for _, s in pairs], R)
    blocks = sorted((k, e) for k, e in ranks.items() if k > 0)
    steinitz = FinGenIdeal.unit(R)
    for J, s in pairs:
        steinitz = steinitz * (J * s + FinGenIdeal(R, [R.one - s]))
    return [e for _, e in blocks], [k for k, _ in blocks], steinitz


def steinitz_from_projector(p, ranks):
    """Independent Steinitz representative from top exterior powers.

    On the block of rank k the ideal generated by the k x k minors of p
    with a fixed row set embeds the k-th exterior power of im(p).
    """
    from itertools import combinations
    from .matrices import determinant
    R = p.ring
    n = p.nrows
    out = []
    covered = R.zero
    for k, e in ranks.items():
        if k == 0:
            continue
        rest = e
        for rows in combinations(range(n), k):
            if not rest:
                break
            ms = [determinant(tuple(tuple(p[i, j] for j in cols) for i in rows), R) * rest
                  for cols in combinations(range(n), k)]
            t = support_idempotent(ms, R)
            if t:
                out.extend(m * t for m in ms)
                rest = rest - t
        covered = covered + e
    out.append(R.one - covered)
    return FinGenIdeal(R, out)
