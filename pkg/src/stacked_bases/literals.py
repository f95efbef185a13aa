"""Text grammar for rings, elements, ideals and matrices.

Rings: ``Z``, ``Z/12``, ``Q[-5]``, ``prod(Z, Z/6)``.
Elements: decimal integers, ``a+b*w`` in quadratic rings, ``(x, y, ...)``
in products. Ideals: ``ideal(g1, g2, ...)``. Matrices: rows separated by
``;``, entries by ``,`` (commas inside parentheses do not split).
"""
import re

from .errors import ParseError
from .rings import Element, Integers, Product, Quadratic, Residue


def format_ring(R):
    if isinstance(R, Integers):
        return "Z"
    if isinstance(R, Residue):
        return f"Z/{R.modulus}"
    if isinstance(R, Quadratic):
        return f"Q[{R.d}]"
    return "prod(" + ", ".join(format_ring(f) for f in R.factors) + ")"


def split_top(s, sep=","):
    """Split on ``sep`` at parenthesis depth zero."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    parts.append("".join(cur))
    return parts


def parse_ring(s):
    t = re.sub(r"\s+", "", s)
    try:
        if t == "Z":
            return Integers()
        m = re.fullmatch(r"Z/(\d+)", t)
        if m:
            return Residue(int(m.group(1)))
        m = re.fullmatch(r"Q\[(-?\d+)\]", t)
        if m:
            return Quadratic(int(m.group(1)))
        if t.startswith("prod(") and t.endswith(")"):
            return Product(*[parse_ring(p) for p in split_top(t[5:-1])])
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"bad ring descriptor {s!r}")


def format_element(x):
    R = x.ring
    if isinstance(R, (Integers, Residue)):
        return str(x.value)
    if isinstance(R, Quadratic):
        a, b = x.value
        if b == 0:
            return str(a)
        if a == 0:
            return f"{b}*w"
        return f"{a}{'+' if b >= 0 else '-'}{abs(b)}*w"
    return "(" + ", ".join(format_element(c) for c in x.components()) + ")"


_TERM = re.compile(r"([+-]?)(\d*)(\*?)(w?)(?:\*(\d+))?")


def _parse_quadratic(t, R):
    if not t or not re.fullmatch(r"[-+0-9w*]+", t):
        raise ParseError(f"bad quadratic literal {t!r}")
    terms = re.findall(r"[+-]?[^+-]+", t)
    if "".join(terms) != t:
        raise ParseError(f"bad quadratic literal {t!r}")
    a = b = 0
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if body == "w":
            b += sign
        elif re.fullmatch(r"\d+", body):
            a += sign * int(body)
        elif re.fullmatch(r"\d+\*w", body):
            b += sign * int(body[:-2])
        elif re.fullmatch(r"w\*\d+", body):
            b += sign * int(body[2:])
        else:
            raise ParseError(f"bad quadratic term {term!r}")
    return Element(R, (a, b))


def parse_element(s, R):
    t = re.sub(r"\s+", "", s)
    if isinstance(R, Product):
        if not (t.startswith("(") and t.endswith(")")):
            if re.fullmatch(r"-?\d+", t):
                return R(int(t))
            raise ParseError(f"product element must be a tuple: {s!r}")
        parts = split_top(t[1:-1])
        if len(parts) != len(R.factors):
            raise ParseError(f"expected {len(R.factors)} components in {s!r}")
        return Element(R, tuple(parse_element(p, f).value for p, f in zip(parts, R.factors)))
    if isinstance(R, Quadratic):
        return _parse_quadratic(t, R)
    if not re.fullmatch(r"-?\d+", t):
        raise ParseError(f"bad integer literal {s!r}")
    return R(int(t))


def parse_ideal(s, R):
    from .ideals import FinGenIdeal
    t = re.sub(r"\s+", "", s)
    if not (t.startswith("ideal(") and t.endswith(")")):
        raise ParseError(f"bad ideal literal {s!r}")
    body = t[6:-1]
    if not body:
        raise ParseError("ideal needs at least one generator")
    return FinGenIdeal(R, [parse_element(p, R) for p in split_top(body)])


def format_ideal_gens(gens):
    return "ideal(" + ", ".join(format_element(g) for g in gens) + ")"


def parse_matrix(s, R):
    from .matrices import RingMatrix
    t = re.sub(r"\s+", "", s)
    if not t:
        raise ParseError("empty matrix")
    rows = []
    for row in split_top(t, ";"):
        if not row:
            raise ParseError(f"empty row in {s!r}")
        rows.append([parse_element(e, R) for e in split_top(row)])
    if len({len(r) for r in rows}) != 1:
        raise ParseError("ragged matrix")
    return RingMatrix(R, rows)


def format_matrix(A):
    return ";".join(",".join(format_element(x) for x in row) for row in A.rows)
