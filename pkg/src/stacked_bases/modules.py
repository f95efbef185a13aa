"""Exact linear algebra over R by lifting submodules of R^n to Z-lattices.

A submodule of R^n generated by vectors v_j is encoded as the Z-lattice
in Z^(n*zrank) spanned by the coordinates of b*v_j for every Z-basis
element b of R, together with the relations of R in every slot.
"""
from . import lattice
from .errors import PreconditionError


def vec_coords(R, v):
    out = []
    for x in v:
        out.extend(R.coords(x))
    return out


def vec_from_coords(R, c, n):
    k = R.zrank
    return [R.from_coords(c[i * k:(i + 1) * k]) for i in range(n)]


def relation_rows(R, n):
    k = R.zrank
    rows = []
    for i in range(n):
        for rel in R.relations():
            row = [0] * (n * k)
            row[i * k:(i + 1) * k] = rel
            rows.append(row)
    return rows


def spanning_rows(R, vectors, n):
    basis = R._zbasis
    return [vec_coords(R, [b * x for x in v]) for v in vectors for b in basis]


def module_lattice(R, vectors, n):
    rows = spanning_rows(R, vectors, n) + relation_rows(R, n)
    return lattice.hnf(rows, n * R.zrank)


def contains(R, basis, v):
    return lattice.contains(basis, vec_coords(R, v))


def solve_combination(vectors, target):
    """Ring coefficients r_j with sum r_j * vectors[j] == target, or None."""
    target = list(target)
    R = target[0].ring
    n = len(target)
    if not vectors:
        return [] if all(x.is_zero() for x in target) else None
    basis = R.zbasis()
    rows = spanning_rows(R, vectors, n)
    rels = relation_rows(R, n)
    t = lattice.solve(rows + rels, vec_coords(R, target), n * R.zrank)
    if t is None:
        return None
    coeffs = []
    pos = 0
    for _ in vectors:
        r = R.zero
        for b in basis:
            if t[pos]:
                r = r + b * t[pos]
            pos += 1
        coeffs.append(r)
    return coeffs


def divide(y, a):
    """The x with a*x == y; requires a to be a non-zero-divisor dividing y."""
    sol = solve_combination([[a]], [y])
    if sol is None:
        raise PreconditionError(f"{a} does not divide {y}")
    return sol[0]


def divide_vector(v, a):
    return [divide(x, a) for x in v]


def same_span(R, gens1, gens2, n):
    return module_lattice(R, gens1, n) == module_lattice(R, gens2, n)


def colon_vectors(R, vectors, basis, n):
    """Ideal lattice {r in R : r*v in M for all v in vectors}, M given by HNF basis."""
    k = R.zrank
    zb = R.zbasis()
    result = None
    for v in vectors:
        images = [vec_coords(R, [b * x for x in v]) for b in zb]
        pre = lattice.preimage(images, list(basis), k, n * k)
        result = pre if result is None else lattice.intersect(result, pre, k)
    if result is None:
        return lattice.hnf([[int(i == j) for j in range(k)] for i in range(k)], k)
    return lattice.hnf(result + R.relations(), k)
