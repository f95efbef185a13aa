"""Stacked bases: R^n = U_1 + ... + U_m + N_m and H = J_1 U_1 + ... + (J_1...J_m) U_m.

Three routes:
  pp       repeated unit-content summand extraction on J^{-1} H (pp rings)
  edr      read off a diagonal form P H Q = D (Bezout rings that are not pp)
  peirce   products mixing the two; each factor is handled separately and
           the results are glued along the component idempotents
"""
from dataclasses import dataclass, field

from . import modules
from .diagonal import diagonalize
from .errors import PreconditionError, UnsupportedRing
from .ideals import FinGenIdeal, content, faithful_completion, ideal_inverse
from .matrices import RingMatrix, mat_inverse, supports_bezout
from .rings import Element, Idempotent, Product, support_idempotent
from .summands import RankOneSummand, is_zero_vec, outer, scale, ucs_summand


@dataclass
class StackedBases:
    ring: object
    n: int
    H: list
    summands: list
    epsilons: list
    stage_ideals: list
    complement: RingMatrix
    route: str
    transforms: dict = field(default_factory=dict)

    @property
    def m(self):
        return len(self.summands)

    @property
    def units(self):
        return [s.gens for s in self.summands]

    def cumulative_ideals(self):
        out = []
        acc = FinGenIdeal.unit(self.ring)
        for J in self.stage_ideals:
            acc = acc * J
            out.append(acc)
        return out

    def complement_gens(self):
        return [c for c in self.complement.columns() if not is_zero_vec(c)]

    def reconstruction_gens(self):
        """Generators of J_1 U_1 + ... + (J_1...J_m) U_m."""
        out = []
        for K, U in zip(self.cumulative_ideals(), self.summands):
            for g in K.zgens:
                for u in U.gens:
                    out.append(scale(u, g))
        return out


def _columns(H):
    if isinstance(H, RingMatrix):
        return [list(c) for c in H.columns()]
    return [list(c) for c in H]


def _apply_inverse(inv, vectors):
    """J^{-1} * span(vectors) as explicit generators."""
    out = []
    for g in inv.numerator.zgens:
        for v in vectors:
            out.append(modules.divide_vector(scale(v, g), inv.denominator))
    return out


def _pp_route(R, n, cols):
    pi = RingMatrix.identity(R, n)
    cur = [c for c in cols if not is_zero_vec(c)]
    summands, eps_list, stages = [], [], []
    for _ in range(n + 1):
        if not cur:
            break
        c = content(cur, R)
        eps = Idempotent(support_idempotent(c.zgens, R))
        J = faithful_completion(c)
        Hp = _apply_inverse(ideal_inverse(J), cur)
        U = ucs_summand(Hp, n, support=eps)
        p = U.projector @ pi
        pi = pi - p
        summands.append(RankOneSummand(R, U.gens, p, eps, U.pieces))
        eps_list.append(eps)
        stages.append(J)
        cur = [c for c in ([x - y for x, y in zip(h, U.projector.apply(h))] for h in Hp)
               if not is_zero_vec(c)]
    else:
        raise PreconditionError("stacked iteration did not terminate in n rounds")
    return summands, eps_list, stages, pi, {}


def _edr_route(R, n, cols):
    H = RingMatrix.from_columns(R, cols, n) if cols else RingMatrix.zeros(R, n, 1)
    form = diagonalize(H)
    W = mat_inverse(form.P)
    Wc = W.columns()
    d = form.diagonal
    summands, eps_list, stages = [], [], []
    pi = RingMatrix.identity(R, n)
    prev = R.one
    for i, di in enumerate(d):
        if not di:
            break
        eps = Idempotent(support_idempotent([di], R))
        u = scale(Wc[i], eps)
        p = outer(R, u, list(form.P.rows[i]))
        q = modules.solve_combination([[prev]], [di])[0]
        J = FinGenIdeal(R, [q * eps, R.one - eps])
        summands.append(RankOneSummand(R, [u], p, eps, [([u], p)]))
        eps_list.append(eps)
        stages.append(J)
        pi = pi - p
        prev = di
    return summands, eps_list, stages, pi, {"P": form.P, "D": form.D, "Q": form.Q}


def _component_cols(R, cols, i):
    f = R.factors[i]
    return f, [[Element(f, x.value[i]) for x in c] for c in cols]


def _glue(R, parts, n):
    """Merge per-factor route outputs along the component idempotents."""
    m = max((len(p[0]) for p in parts), default=0)
    k = len(R.factors)

    def lift(i, x):
        return R.embed(i, x)

    summands, eps_list, stages = [], [], []
    for r in range(m):
        gens, proj, eps, J = [], RingMatrix.zeros(R, n, n), R.zero, []
        for i, (S, E, Js, _, _) in enumerate(parts):
            if r < len(S):
                for g in S[r].gens:
                    gens.append([lift(i, x) for x in g])
                proj = proj + RingMatrix(R, [[lift(i, x) for x in row] for row in S[r].projector.rows])
                eps = eps + lift(i, E[r])
                J.append(Js[r].zgens)
            else:
                J.append([R.factors[i].one])
        summands.append(RankOneSummand(R, gens, proj, Idempotent(eps)))
        eps_list.append(Idempotent(eps))
        stages.append(FinGenIdeal(R, [lift(i, g) for i in range(k) for g in J[i]]))
    pi = RingMatrix.identity(R, n)
    for s in summands:
        pi = pi - s.projector
    return summands, eps_list, stages, pi, {}


def _route_for(R):
    if R.is_pp():
        return "pp"
    if supports_bezout(R):
        return "edr"
    if isinstance(R, Product):
        return "peirce"
    raise UnsupportedRing(f"stacked bases are not available over {R}")


def _run(R, route, n, cols):
    if route == "pp":
        return _pp_route(R, n, cols)
    if route == "edr":
        return _edr_route(R, n, cols)
    parts = []
    for i in range(len(R.factors)):
        f, fc = _component_cols(R, cols, i)
        parts.append(_run(f, _route_for(f), n, fc))
    return _glue(R, parts, n)


def stacked_bases(n, H, ring=None):
    """StackedBases for the column span of H inside R^n."""
    cols = _columns(H)
    R = ring or (H.ring if isinstance(H, RingMatrix) else cols[0][0].ring)
    if any(len(c) != n for c in cols):
        raise PreconditionError(f"columns must have length {n}")
    route = _route_for(R)
    summands, eps, stages, pi, transforms = _run(R, route, n, cols)
    return StackedBases(R, n, cols, summands, eps, stages, pi, route, transforms)
