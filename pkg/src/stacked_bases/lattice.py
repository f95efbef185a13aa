"""Integer lattice toolkit used to lift every ring computation to Z.

Lattices are given by integer row vectors; all results are in the
canonical Hermite form returned by :func:`hnf`.
"""
import itertools
import os

from . import _hnf_py

try:
    if os.environ.get("STACKED_BASES_PURE"):
        raise ImportError("pure-Python kernel requested")
    from . import _hnf_ext
except ImportError:
    _hnf_ext = None

BACKEND = "cython" if _hnf_ext is not None else "python"


def hnf(rows, ncols):
    if _hnf_ext is not None:
        try:
            return _hnf_ext.hnf(rows, ncols)
        except OverflowError:
            pass
    return _hnf_py.hnf(rows, ncols)


def reduce_vector(basis, v):
    """Reduce ``v`` against an HNF basis. Returns (remainder, coefficients)."""
    v = list(v)
    coeffs = [0] * len(basis)
    for idx, row in enumerate(basis):
        j = _pivot(row)
        p = row[j]
        q = v[j] // p
        if q:
            coeffs[idx] = q
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    return v, coeffs


def _pivot(row):
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row in basis")


def contains(basis, v):
    rem, _ = reduce_vector(basis, v)
    return not any(rem)


def express(basis, v):
    """Integer coefficients c with sum c_i basis_i == v, or None."""
    rem, coeffs = reduce_vector(basis, v)
    if any(rem):
        return None
    return coeffs


def is_sublattice(small, big):
    return all(contains(big, row) for row in small)


def relations(rows, payloads, ncols, pcols):
    """Lattice of payload combinations sum t_i payload_i over integer t
    with sum t_i rows_i == 0."""
    aug = [list(r) + list(p) for r, p in zip(rows, payloads)]
    H = hnf(aug, ncols + pcols)
    return hnf([row[ncols:] for row in H if not any(row[:ncols])], pcols)


def solve(rows, target, ncols):
    """Integer t with sum t_i rows_i == target, or None."""
    m = len(rows)
    aug = [list(r) + [int(i == k) for k in range(m)] for i, r in enumerate(rows)]
    H = hnf(aug, ncols + m)
    basis = [row for row in H if any(row[:ncols])]
    if not basis:
        return [0] * m if not any(target) else None
    coeffs = express([row[:ncols] for row in basis], target)
    if coeffs is None:
        return None
    t = [0] * m
    for c, row in zip(coeffs, basis):
        if c:
            for k in range(m):
                t[k] += c * row[ncols + k]
    return t


def intersect(A, B, ncols):
    rows = list(A) + list(B)
    payloads = list(A) + [[0] * ncols for _ in B]
    return relations(rows, payloads, ncols, ncols)


def preimage(images, target, ncols_in, ncols_out):
    """{x in Z^ncols_in : sum x_i images_i in target}. ``images[i]`` is the
    image of the i-th unit vector."""
    rows = [list(im) for im in images] + [[-x for x in row] for row in target]
    payloads = [[int(i == k) for k in range(ncols_in)] for i in range(ncols_in)]
    payloads += [[0] * ncols_in for _ in target]
    return relations(rows, payloads, ncols_out, ncols_in)


def index(basis, ncols):
    """Index of a full-rank lattice in Z^ncols, or None if not full rank."""
    if len(basis) != ncols:
        return None
    out = 1
    for j, row in enumerate(basis):
        out *= row[j]
    return out


def coset_reps(big, small, ncols):
    """Representatives of big/small in canonical enumeration order.

    Both are HNF bases; small must be a finite-index sublattice of big.
    """
    coords = []
    for row in small:
        c = express(big, row)
        if c is None:
            raise ValueError("not a sublattice")
        coords.append(c)
    C = hnf(coords, len(big))
    if len(C) != len(big):
        raise ValueError("infinite quotient")
    ranges = [range(C[i][i]) for i in range(len(big))]
    for ks in itertools.product(*ranges):
        v = [0] * ncols
        for k, row in zip(ks, big):
            if k:
                for j in range(ncols):
                    v[j] += k * row[j]
        yield v


def quotient_size(big, small):
    coords = [express(big, row) for row in small]
    if any(c is None for c in coords):
        raise ValueError("not a sublattice")
    C = hnf(coords, len(big))
    if len(C) != len(big):
        return None
    out = 1
    for i in range(len(big)):
        out *= C[i][i]
    return out
