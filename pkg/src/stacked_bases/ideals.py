"""Finitely generated and fractional ideals with canonical normal forms."""
import math
from functools import cached_property

from . import lattice, modules
from .errors import NotInvertible, RingMismatch
from .rings import (Element, Integers, Product, Quadratic, Residue,
                    support_idempotent)


class FinGenIdeal:
    """Ideal of R generated by ``gens``.

    Equality is equality of the underlying Z-lattices, which is the same
    as equality of ring-specific normal forms.
    """

    def __init__(self, ring, gens):
        gens = [ring(g) for g in gens]
        if not gens:
            gens = [ring.zero]
        self.ring = ring
        self.gens = tuple(gens)
        self.basis = tuple(tuple(r) for r in modules.module_lattice(ring, [[g] for g in gens], 1))

    @cached_property
    def zgens(self):
        """Ring elements forming a Z-basis of I (they also generate I as an ideal)."""
        gens = [self.ring.from_coords(list(r)) for r in self.basis]
        return tuple(gens) or (self.ring.zero,)

    @classmethod
    def unit(cls, R):
        return cls(R, [R.one])

    @classmethod
    def zero(cls, R):
        return cls(R, [R.zero])

    def __eq__(self, other):
        if not isinstance(other, FinGenIdeal):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self):
        return hash((self.ring, self.basis))

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def contains(self, x):
        return lattice.contains(self.basis, self.ring.coords(self.ring(x)))

    __contains__ = contains

    def __le__(self, other):
        self._check(other)
        return all(other.contains(g) for g in self.zgens)

    def __ge__(self, other):
        return other <= self

    def is_zero(self):
        return all(g.is_zero() for g in self.zgens)

    def is_unit_ideal(self):
        return self.contains(self.ring.one)

    def __add__(self, other):
        self._check(other)
        return FinGenIdeal(self.ring, self.zgens + other.zgens)

    def __mul__(self, other):
        if isinstance(other, Element):
            return FinGenIdeal(self.ring, [g * other for g in self.zgens])
        if isinstance(other, FractionalIdeal):
            return other * self
        self._check(other)
        return FinGenIdeal(self.ring, [a * b for a in self.zgens for b in other.zgens])

    __rmul__ = __mul__

    def __pow__(self, k):
        out = FinGenIdeal.unit(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def intersect(self, other):
        self._check(other)
        rows = lattice.intersect(self.basis, other.basis, self.ring.zrank)
        return FinGenIdeal(self.ring, [self.ring.from_coords(r) for r in rows])

    def index(self):
        """|R/I| when finite, else None."""
        full = _full_basis(self.ring)
        return lattice.quotient_size(full, [list(r) for r in self.basis])

    def norm(self):
        return self.index()

    def residues(self):
        """Representatives of R/I in canonical enumeration order."""
        full = _full_basis(self.ring)
        for c in lattice.coset_reps(full, [list(r) for r in self.basis], self.ring.zrank):
            yield self.ring.from_coords(c)

    def elements(self):
        """Elements of I for a finite ring, in canonical order."""
        zero = _zero_basis(self.ring)
        for c in lattice.coset_reps([list(r) for r in self.basis], zero, self.ring.zrank):
            yield self.ring.from_coords(c)

    def components(self):
        R = self.ring
        return [FinGenIdeal(f, [Element(f, g.value[i]) for g in self.zgens])
                for i, f in enumerate(R.factors)]

    @cached_property
    def normal_form(self):
        R = self.ring
        if isinstance(R, Integers):
            return self.basis[0][0] if self.basis else 0
        if isinstance(R, Residue):
            return self.basis[0][0]
        if isinstance(R, Quadratic):
            if not self.basis:
                return "zero"
            return self.basis
        return tuple(c.normal_form for c in self.components())

    def canonical_gens(self):
        """Generators read off the normal form (deterministic)."""
        R = self.ring
        if isinstance(R, Product):
            comps = self.components()
            cg = [c.canonical_gens() for c in comps]
            if all(len(g) == 1 for g in cg):
                return [Element(R, tuple(g[0].value for g in cg))]
            out = []
            for i, c in enumerate(comps):
                for g in c.canonical_gens():
                    if g:
                        out.append(R.embed(i, g))
            return out or [R.zero]
        gens = [R.from_coords(list(r)) for r in self.basis]
        if isinstance(R, Quadratic) and gens:
            # lead with the smallest positive rational integer in I
            k = lattice.intersect([list(r) for r in self.basis], [[1, 0]], 2)
            gens = [R(k[0][0])] + gens
        for g in gens:
            if g and FinGenIdeal(R, [g]) == self:
                return [g]
        kept = []
        for g in gens:
            if g and not (kept and FinGenIdeal(R, kept).contains(g)):
                kept.append(g)
        return kept or [R.zero]

    def __str__(self):
        from .literals import format_ideal_gens
        return format_ideal_gens(self.canonical_gens())

    def __repr__(self):
        return f"FinGenIdeal({self.ring!r}, {self})"


def _full_basis(R):
    k = R.zrank
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _zero_basis(R):
    return lattice.hnf(R.relations(), R.zrank)


class FractionalIdeal:
    """numerator / denominator with a non-zero-divisor denominator."""

    def __init__(self, numerator, denominator):
        from .rings import is_zero_divisor
        if is_zero_divisor(denominator):
            raise NotInvertible(f"denominator {denominator} is a zero-divisor")
        self.numerator = numerator
        self.denominator = denominator
        self.ring = numerator.ring

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        raise TypeError("fractional ideals are compared by cross-multiplication")

    def __mul__(self, other):
        if isinstance(other, FinGenIdeal):
            return FractionalIdeal(self.numerator * other, self.denominator)
        return FractionalIdeal(self.numerator * other.numerator,
                               self.denominator * other.denominator)

    __rmul__ = __mul__

    def is_integral(self):
        return self.numerator <= FinGenIdeal(self.ring, [self.denominator])

    def to_ideal(self):
        if not self.is_integral():
            raise ValueError("fractional ideal is not integral")
        return FinGenIdeal(self.ring, [modules.divide(g, self.denominator)
                                       for g in self.numerator.gens])

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self):
        return f"FractionalIdeal({self})"


def normalize(gens, ring=None):
    gens = list(gens)
    R = ring if ring is not None else gens[0].ring
    return FinGenIdeal(R, gens)


def ideal_sum(I, J):
    return I + J


def ideal_product(I, J):
    return I * J


def ideal_intersect(I, J):
    return I.intersect(J)


def content(vectors, ring=None):
    """Ideal generated by all coordinates of all vectors."""
    coords = [x for v in vectors for x in v]
    R = ring if ring is not None else coords[0].ring
    return FinGenIdeal(R, coords)


def annihilator(I):
    """(0 : I) computed exactly through the lattice layer."""
    R = I.ring
    rows = modules.colon_vectors(R, [[g] for g in I.zgens], _zero_basis(R), 1)
    return FinGenIdeal(R, [R.from_coords(r) for r in rows])


def colon(A, B):
    """(A : B) = {r : r*B in A}."""
    R = A.ring
    rows = modules.colon_vectors(R, [[g] for g in B.zgens], [list(r) for r in A.basis], 1)
    return FinGenIdeal(R, [R.from_coords(r) for r in rows])


def _nzd_witness(I):
    from .rings import is_zero_divisor
    R = I.ring
    if isinstance(R, Product):
        parts = []
        for c in I.components():
            w = _nzd_witness(c)
            if w is None:
                return None
            parts.append(w.value)
        return Element(R, tuple(parts))
    if R.is_domain():
        m = I.index()
        if m is None:
            return None
        # smallest positive rational integer in I; it divides the index
        for k in range(1, m + 1):
            if m % k == 0 and I.contains(R(k)):
                return R(k)
    for x in I.elements():
        if not is_zero_divisor(x):
            return x
    return None


def is_faithful(I):
    """(faithful?, non-zero-divisor witness in I or None)."""
    if not annihilator(I).is_zero():
        return False, None
    w = _nzd_witness(I)
    return True, w


def faithful_completion(I):
    """I*eps + R*(1-eps) for eps the support idempotent of I."""
    R = I.ring
    eps = support_idempotent(I.zgens, R)
    return FinGenIdeal(R, [g * eps for g in I.zgens] + [R.one - eps])


def ideal_inverse(I):
    R = I.ring
    faithful, a = is_faithful(I)
    if not faithful or a is None:
        raise NotInvertible(f"{I} is not faithful")
    aR = FinGenIdeal(R, [a])
    num = colon(aR, I)
    if I * num != aR:
        raise NotInvertible(f"{I} is not invertible")
    return FractionalIdeal(num, a)


def is_invertible(I):
    try:
        ideal_inverse(I)
    except NotInvertible:
        return False
    return True


def canonical_associate(x):
    """Deterministic representative of the associate class of x."""
    from .rings import inverse
    R = x.ring
    if isinstance(R, Integers):
        return R(abs(x.value))
    if isinstance(R, Residue):
        return R(math.gcd(x.value, R.modulus))
    if isinstance(R, Quadratic):
        units = R.units()
        if units is None:
            a, b = x.value
            return -x if (a, b) < (0, 0) else x
        return max((u * x for u in units), key=lambda y: y.value)
    return Element(R, tuple(canonical_associate(c).value for c in x.components()))


def associate_unit(x):
    """Unit w with w*x == canonical_associate(x)."""
    from .rings import is_unit
    R = x.ring
    target = canonical_associate(x)
    if isinstance(R, Product):
        return Element(R, tuple(associate_unit(c).value for c in x.components()))
    if isinstance(R, Integers):
        return R(-1 if x.value < 0 else 1)
    if isinstance(R, Quadratic):
        units = R.units() or [R.one, -R.one]
        for u in units:
            if u * x == target:
                return u
    if isinstance(R, Residue):
        n = R.modulus
        g = target.value
        if g == n or x.is_zero():
            return R.one
        step = n // g
        w0 = pow((x.value // g) % step, -1, step) if step > 1 else 0
        for k in range(g):
            w = R(w0 + k * step)
            if is_unit(w) and w * x == target:
                return w
    raise AssertionError("no associating unit")  # pragma: no cover


def _real_fundamental_unit(R):
    c0, c1 = R.omega_square
    b = 1
    while True:
        for target in (1, -1):
            # a^2 + c1*a*b - c0*b^2 == target
            disc = (c1 * b) ** 2 - 4 * (-c0 * b * b - target)
            if disc >= 0:
                s = math.isqrt(disc)
                if s * s == disc:
                    for num in (-c1 * b + s, -c1 * b - s):
                        if num % 2 == 0:
                            u = Element(R, (num // 2, b))
                            val = _embed(R, u)
                            if val > 1:
                                return u, val
                            if val < -1:
                                return -u, -val
        b += 1


def _embed(R, x):
    c0, c1 = R.omega_square
    w = (c1 + math.sqrt(c1 * c1 + 4 * c0)) / 2
    a, b = x.value
    return a + b * w


def _norm_solutions(R, N, bbound):
    """All a + b*w with |norm| == N and |b| <= bbound."""
    c0, c1 = R.omega_square
    for b in range(-bbound, bbound + 1):
        for target in {N, -N}:
            disc = (c1 * b) ** 2 - 4 * (-c0 * b * b - target)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for num in sorted({-c1 * b + s, -c1 * b - s}):
                if num % 2 == 0:
                    yield Element(R, (num // 2, b))


def _quadratic_generator(I):
    R = I.ring
    N = I.index()
    D = R.discriminant
    if R.d < 0:
        # norm(a + b*w) >= |D| b^2 / 4
        bbound = math.isqrt(4 * N // abs(D)) + 1
    else:
        _, eps = _real_fundamental_unit(R)
        # a generator exists with both embeddings bounded by sqrt(N*eps)
        bbound = int(2 * math.sqrt(N * eps) / math.sqrt(D)) + 1
    found = [x for x in _norm_solutions(R, N, bbound) if I.contains(x)]
    if not found:
        return None
    return min((canonical_associate(x) for x in found), key=lambda y: (abs(y.value[1]), y.value))


def is_principal(I):
    """A generator of I, or None when I is not principal."""
    R = I.ring
    if isinstance(R, Product):
        parts = []
        for c in I.components():
            g = is_principal(c)
            if g is None:
                return None
            parts.append(g.value)
        return Element(R, tuple(parts))
    if isinstance(R, (Integers, Residue)):
        return I.canonical_gens()[0]
    if I.is_zero():
        return R.zero
    return _quadratic_generator(I)


def is_isomorphic(I, J):
    """(True, (g, a)) with a*J == g*I, i.e. J = (g/a) I; else (False, None)."""
    I._check(J)
    inv = ideal_inverse(I)
    ideal_inverse(J)
    g = is_principal(J * inv.numerator)
    if g is None:
        return False, None
    a = inv.denominator
    if J * a != I * g:
        raise AssertionError("isomorphism witness failed verification")
    return True, (g, a)
