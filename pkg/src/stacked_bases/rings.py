"""Ring descriptors, elements and the structural primitives on them.

Four kinds of commutative ring are supported: the integers, residue
rings Z/n, maximal orders of quadratic fields, and finite products of
these. Every ring is presented to the Z-lattice layer through a Z-basis
``zbasis()`` and integer ``relations()``: the ring is Z^zrank / relations
as an additive group.
"""
import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import (PreconditionError, RingMismatch, SearchExhausted,
                     UnsupportedRing)


@lru_cache(maxsize=None)
def factor(n):
    """Prime factorisation of a positive integer as ((p, k), ...)."""
    from sympy import factorint
    return tuple(sorted((int(p), int(k)) for p, k in factorint(n).items()))


def xgcd(a, b):
    """(g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def _squarefree(d):
    return all(k == 1 for _, k in factor(abs(d)))


class Element:
    """An element of a ring, stored in the ring's canonical encoding."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._add(self.value, self.ring._neg(other.value)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring._mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.value))

    def __pow__(self, k):
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.value == other.value and (self.ring is other.ring or self.ring == other.ring)

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != self.ring.zero.value

    def __repr__(self):
        return f"Element({self.ring}, {self})"

    def __str__(self):
        from .literals import format_element
        return format_element(self)

    def is_zero(self):
        return not self

    def components(self):
        """Component elements of a product-ring element."""
        return [Element(f, v) for f, v in zip(self.ring.factors, self.value)]


class Idempotent(Element):
    """An element e with e*e == e, checked at construction."""

    __slots__ = ()

    def __init__(self, value):
        if not isinstance(value, Element):
            raise TypeError("Idempotent wraps an Element")
        if value * value != value:
            raise PreconditionError(f"{value} is not idempotent")
        super().__init__(value.ring, value.value)

    def complement(self):
        return Idempotent(self.ring.one - self)


class Ring:
    kind = "abstract"

    def __call__(self, value):
        if isinstance(value, Element):
            if value.ring is not self and value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        return Element(self, self._from_int(value))

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    @cached_property
    def _zbasis(self):
        return self.zbasis()

    # Z-lattice presentation
    def zbasis(self):
        raise NotImplementedError

    @cached_property
    def zrank(self):
        return len(self._zbasis)

    def relations(self):
        return []

    def coords(self, x):
        raise NotImplementedError

    def from_coords(self, c):
        raise NotImplementedError

    def mul_images(self, x):
        """Coordinates of x*b for each Z-basis element b."""
        return [self.coords(x * b) for b in self.zbasis()]

    is_finite = False

    def elements(self):
        raise UnsupportedRing(f"{self} is infinite")

    def enumerate(self, bound=None):
        """Canonical enumeration order; bounded shells for infinite rings."""
        return self.elements()

    def is_pp(self):
        return True

    def is_domain(self):
        return False

    def factors_list(self):
        return [self]

    def __str__(self):
        from .literals import format_ring
        return format_ring(self)


@dataclass(frozen=True)
class Integers(Ring):
    kind = "Integers"

    def _from_int(self, v):
        return int(v)

    def _add(self, x, y):
        return x + y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def zbasis(self):
        return [self.one]

    def coords(self, x):
        return [x.value]

    def from_coords(self, c):
        return Element(self, c[0])

    def mul_images(self, x):
        return [[x.value]]

    def enumerate(self, bound=50):
        yield self(0)
        for k in range(1, bound + 1):
            yield self(k)
            yield self(-k)

    def is_domain(self):
        return True

    def __repr__(self):
        return "Integers()"


@dataclass(frozen=True)
class Residue(Ring):
    modulus: int
    kind = "Residue"

    def __post_init__(self):
        if self.modulus < 2:
            raise PreconditionError("residue modulus must be >= 2 (zero ring rejected)")

    def _from_int(self, v):
        return int(v) % self.modulus

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _neg(self, x):
        return (-x) % self.modulus

    def _mul(self, x, y):
        return (x * y) % self.modulus

    def zbasis(self):
        return [self.one]

    def relations(self):
        return [[self.modulus]]

    def coords(self, x):
        return [x.value]

    def from_coords(self, c):
        return Element(self, c[0] % self.modulus)

    def mul_images(self, x):
        return [[x.value]]

    is_finite = True

    @property
    def size(self):
        return self.modulus

    def elements(self):
        return (Element(self, v) for v in range(self.modulus))

    def is_pp(self):
        return _squarefree(self.modulus)

    def is_domain(self):
        return len(factor(self.modulus)) == 1 and factor(self.modulus)[0][1] == 1

    def prime_power_idempotent(self, qs):
        """The idempotent that is 1 modulo each prime power in qs, 0 modulo the rest."""
        n = self.modulus
        e = 0
        for p, k in factor(n):
            q = p ** k
            if q in qs:
                m = n // q
                e += m * pow(m, -1, q)
        return self(e)

    def __repr__(self):
        return f"Residue({self.modulus})"


@dataclass(frozen=True)
class Quadratic(Ring):
    """Maximal order Z[w] of Q(sqrt d)."""

    d: int
    kind = "Quadratic"

    def __post_init__(self):
        if self.d in (0, 1) or not _squarefree(self.d):
            raise PreconditionError(f"d={self.d} must be squarefree and not 0 or 1")

    @property
    def omega_square(self):
        """(c0, c1) with w^2 == c0 + c1*w."""
        if self.d % 4 == 1:
            return ((self.d - 1) // 4, 1)
        return (self.d, 0)

    @property
    def discriminant(self):
        return self.d if self.d % 4 == 1 else 4 * self.d

    def _from_int(self, v):
        if isinstance(v, tuple):
            return (int(v[0]), int(v[1]))
        return (int(v), 0)

    def _add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def _neg(self, x):
        return (-x[0], -x[1])

    def _mul(self, x, y):
        c0, c1 = self.omega_square
        a, b = x
        c, e = y
        be = b * e
        return (a * c + be * c0, a * e + b * c + be * c1)

    @property
    def omega(self):
        return Element(self, (0, 1))

    def norm(self, x):
        c0, c1 = self.omega_square
        a, b = x.value
        return a * a + c1 * a * b - c0 * b * b

    def conjugate(self, x):
        _, c1 = self.omega_square
        a, b = x.value
        return Element(self, (a + b * c1, -b))

    def zbasis(self):
        return [self.one, self.omega]

    def coords(self, x):
        return list(x.value)

    def from_coords(self, c):
        return Element(self, (c[0], c[1]))

    def mul_images(self, x):
        c0, c1 = self.omega_square
        a, b = x.value
        return [[a, b], [b * c0, a + b * c1]]

    def enumerate(self, bound=12):
        yield self(0)
        for r in range(1, bound + 1):
            for a in range(-r, r + 1):
                for b in range(-r, r + 1):
                    if max(abs(a), abs(b)) == r:
                        yield Element(self, (a, b))

    def is_domain(self):
        return True

    def units(self):
        """Finite unit group for imaginary orders; None for real ones."""
        if self.d > 0:
            return None
        out = []
        for x in self.enumerate(2):
            if abs(self.norm(x)) == 1:
                out.append(x)
        return out

    def class_number(self):
        """Class number via reduced forms; imaginary fields only."""
        D = self.discriminant
        if D > 0:
            raise UnsupportedRing("class number of real quadratic orders is not computed")
        h = 0
        a = 1
        while 3 * a * a <= -D:
            for b in range(-a + 1, a + 1):
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                if c < a:
                    continue
                if b < 0 and (a == c):
                    continue
                if math.gcd(math.gcd(a, abs(b)), c) != 1:
                    continue
                h += 1
            a += 1
        return h

    def __repr__(self):
        return f"Quadratic({self.d})"


@dataclass(frozen=True)
class Product(Ring):
    factors: tuple
    kind = "Product"

    def __init__(self, *factors):
        if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
            factors = tuple(factors[0])
        flat = []
        for f in factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if len(flat) < 2:
            raise PreconditionError("a product needs at least two factors")
        object.__setattr__(self, "factors", tuple(flat))

    def _from_int(self, v):
        if isinstance(v, tuple):
            if len(v) != len(self.factors):
                raise PreconditionError("product arity mismatch")
            return tuple(f(x).value for f, x in zip(self.factors, v))
        return tuple(f._from_int(v) for f in self.factors)

    def _add(self, x, y):
        return tuple(f._add(a, b) for f, a, b in zip(self.factors, x, y))

    def _neg(self, x):
        return tuple(f._neg(a) for f, a in zip(self.factors, x))

    def _mul(self, x, y):
        return tuple(f._mul(a, b) for f, a, b in zip(self.factors, x, y))

    def embed(self, i, x):
        vals = [f.zero.value for f in self.factors]
        vals[i] = x.value
        return Element(self, tuple(vals))

    def component_idempotent(self, i):
        return self.embed(i, self.factors[i].one)

    def zbasis(self):
        return [self.embed(i, b) for i, f in enumerate(self.factors) for b in f.zbasis()]

    def relations(self):
        rows = []
        offset = 0
        total = self.zrank
        for f in self.factors:
            for rel in f.relations():
                row = [0] * total
                row[offset:offset + len(rel)] = rel
                rows.append(row)
            offset += f.zrank
        return rows

    @cached_property
    def zrank(self):
        return sum(f.zrank for f in self.factors)

    def coords(self, x):
        out = []
        for f, v in zip(self.factors, x.value):
            out.extend(f.coords(Element(f, v)))
        return out

    def from_coords(self, c):
        vals = []
        pos = 0
        for f in self.factors:
            k = f.zrank
            vals.append(f.from_coords(c[pos:pos + k]).value)
            pos += k
        return Element(self, tuple(vals))

    def mul_images(self, x):
        total = self.zrank
        rows = []
        offset = 0
        for f, v in zip(self.factors, x.value):
            for im in f.mul_images(Element(f, v)):
                row = [0] * total
                row[offset:offset + len(im)] = im
                rows.append(row)
            offset += f.zrank
        return rows

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def size(self):
        return math.prod(f.size for f in self.factors)

    def elements(self):
        for vals in itertools.product(*[list(f.elements()) for f in self.factors]):
            yield Element(self, tuple(v.value for v in vals))

    def enumerate(self, bound=None):
        if self.is_finite:
            return self.elements()
        raise UnsupportedRing("canonical enumeration of infinite products is componentwise only")

    def is_pp(self):
        return all(f.is_pp() for f in self.factors)

    def factors_list(self):
        return list(self.factors)

    def __repr__(self):
        return "Product(" + ", ".join(repr(f) for f in self.factors) + ")"


def same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    return a.ring


def arith(op, a, b=None):
    if op == "neg":
        return -a
    same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def is_unit(a):
    R = a.ring
    if isinstance(R, Integers):
        return abs(a.value) == 1
    if isinstance(R, Residue):
        return math.gcd(a.value, R.modulus) == 1
    if isinstance(R, Quadratic):
        return abs(R.norm(a)) == 1
    return all(is_unit(c) for c in a.components())


def inverse(a):
    R = a.ring
    if not is_unit(a):
        raise PreconditionError(f"{a} is not a unit")
    if isinstance(R, Integers):
        return a
    if isinstance(R, Residue):
        return R(pow(a.value, -1, R.modulus))
    if isinstance(R, Quadratic):
        return R.conjugate(a) * R.norm(a)
    return Element(R, tuple(inverse(c).value for c in a.components()))


def is_zero_divisor(a):
    R = a.ring
    if isinstance(R, (Integers, Quadratic)):
        return a.is_zero()
    if isinstance(R, Residue):
        return math.gcd(a.value, R.modulus) > 1
    return any(is_zero_divisor(c) for c in a.components())


def annihilator_idempotent(gens, ring=None):
    """Idempotent f with f*A == 0 for the ideal A generated by ``gens``.

    On pp-rings (0 : A) == R*f exactly. On Z/n with n not squarefree this
    is the largest idempotent killing A, which can be strictly smaller
    than the annihilator.
    """
    gens = list(gens)
    R = ring if ring is not None else gens[0].ring
    for g in gens:
        if g.ring != R:
            raise RingMismatch(f"{g.ring} vs {R}")
    if isinstance(R, (Integers, Quadratic)):
        return Idempotent(R.one if all(g.is_zero() for g in gens) else R.zero)
    if isinstance(R, Residue):
        qs = set()
        for p, k in factor(R.modulus):
            q = p ** k
            if all(g.value % q == 0 for g in gens):
                qs.add(q)
        return Idempotent(R.prime_power_idempotent(qs))
    parts = []
    for i, f in enumerate(R.factors):
        comp = [Element(f, g.value[i]) for g in gens]
        parts.append(annihilator_idempotent(comp, ring=f).value)
    return Idempotent(Element(R, tuple(parts)))


def support_idempotent(gens, ring=None):
    """Complement of :func:`annihilator_idempotent`."""
    return annihilator_idempotent(gens, ring).complement()


def idempotents(R):
    if isinstance(R, (Integers, Quadratic)):
        return [Idempotent(R.zero), Idempotent(R.one)]
    if isinstance(R, Residue):
        primes = [p ** k for p, k in factor(R.modulus)]
        out = []
        for mask in itertools.product([0, 1], repeat=len(primes)):
            out.append(Idempotent(R.prime_power_idempotent({q for q, b in zip(primes, mask) if b})))
        return sorted(out, key=lambda e: e.value)
    out = []
    for combo in itertools.product(*[idempotents(f) for f in R.factors]):
        out.append(Idempotent(Element(R, tuple(e.value for e in combo))))
    return out


def _residue_bezout(R, a, b, coprime):
    n = R.modulus
    g = math.gcd(math.gcd(a.value, b.value), n)
    if g == n:
        if coprime:
            return R.zero, R.one, R.zero, R.one, R.zero
        return R.zero, R.zero, R.zero, R.zero, R.zero
    step = n // g
    a0, b0 = a.value // g, b.value // g
    for k in range(g):
        for l in range(g):
            ap, bp = a0 + k * step, b0 + l * step
            g1, x, y = xgcd(ap, bp)
            if math.gcd(g1, n) == 1:
                inv = pow(g1, -1, n)
                return R(g), R(ap), R(bp), R(x * inv), R(y * inv)
    raise SearchExhausted("no coprime cofactors found")  # unreachable by CRT


def bezout_data(a, b, coprime=False):
    """(d, a', b', u, v) with a == a'd, b == b'd, d == u*a + v*b.

    Except when a == b == 0 (and ``coprime`` is false) the cofactors
    satisfy u*a' + v*b' == 1, so R*a' + R*b' == R.
    """
    R = same_ring(a, b)
    if isinstance(R, Integers):
        g, x, y = xgcd(a.value, b.value)
        if g == 0:
            if coprime:
                return R.zero, R.one, R.zero, R.one, R.zero
            return (R.zero,) * 5
        return R(g), R(a.value // g), R(b.value // g), R(x), R(y)
    if isinstance(R, Residue):
        return _residue_bezout(R, a, b, coprime)
    if isinstance(R, Quadratic):
        return _quadratic_bezout(R, a, b, coprime)
    if not coprime and a.is_zero() and b.is_zero():
        return (R.zero,) * 5
    parts = [bezout_data(x, y, coprime=True) for x, y in zip(a.components(), b.components())]
    return tuple(Element(R, tuple(p[i].value for p in parts)) for i in range(5))


def _quadratic_bezout(R, a, b, coprime):
    from . import ideals, modules
    if a.is_zero() and b.is_zero():
        if coprime:
            return R.zero, R.one, R.zero, R.one, R.zero
        return (R.zero,) * 5
    d = ideals.is_principal(ideals.FinGenIdeal(R, [a, b]))
    if d is None:
        raise UnsupportedRing(f"({a}, {b}) is not principal in {R}; Bezout data unavailable")
    ap = modules.divide(a, d)
    bp = modules.divide(b, d)
    coeff = modules.solve_combination([[ap], [bp]], [R.one])
    return d, ap, bp, coeff[0], coeff[1]


def generates_unit_ideal(elems, ring=None):
    from .ideals import FinGenIdeal
    elems = list(elems)
    R = ring if ring is not None else elems[0].ring
    if isinstance(R, Integers):
        return math.gcd(*(x.value for x in elems)) == 1
    if isinstance(R, Residue):
        return math.gcd(R.modulus, *(x.value for x in elems)) == 1
    if isinstance(R, Product):
        return all(generates_unit_ideal([Element(f, x.value[i]) for x in elems], f)
                   for i, f in enumerate(R.factors))
    return FinGenIdeal(R, elems).is_unit_ideal()


def unit_shift(ap, bp, bound=None):
    """First c in canonical enumeration order with ap + c*bp a unit.

    Requires R*ap + R*bp == R. On infinite rings the enumeration is
    bounded and exhaustion raises :class:`SearchExhausted`.
    """
    R = same_ring(ap, bp)
    if not generates_unit_ideal([ap, bp], R):
        raise PreconditionError(f"R*{ap} + R*{bp} != R")
    if isinstance(R, Product):
        return Element(R, tuple(unit_shift(x, y, bound).value
                                for x, y in zip(ap.components(), bp.components())))
    cands = R.enumerate(bound) if bound is not None else R.enumerate()
    for c in cands:
        if is_unit(ap + c * bp):
            return c
    raise SearchExhausted(f"no unit value of {ap} + c*{bp} in {R}; ring is not local-global")


def orthogonalize_idempotents(eps, coeffs):
    """Orthogonal idempotents e_j in R*eps[j] and b_j with sum b_j e_j == 1.

    ``coeffs`` must satisfy sum coeffs[j]*eps[j] == 1. Zero e_j are dropped;
    the returned b_j all equal 1, so b_j e_j == e_j.
    """
    eps = list(eps)
    coeffs = list(coeffs)
    if not eps or len(eps) != len(coeffs):
        raise PreconditionError("need matching nonempty eps and coeffs")
    R = eps[0].ring
    total = R.zero
    for c, e in zip(coeffs, eps):
        total = total + c * e
    if total != R.one:
        raise PreconditionError(f"sum of coeffs*eps is {total}, not 1")
    out = []
    rest = R.one
    for c, e in zip(coeffs, eps):
        s = support_idempotent([c * e], R)
        ej = s * rest
        rest = rest * (R.one - ej)
        if ej:
            out.append(Idempotent(ej))
    return out, [R.one for _ in out]
