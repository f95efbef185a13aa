"""Independent oracles and verifiers.

snf_oracle works on plain Python integers and uses nothing from the
decomposition code. The finite-ring checkers enumerate ideals as explicit
element sets.
"""
import math
import random
from dataclasses import dataclass, field

from . import modules
from .ideals import FinGenIdeal, colon, content, is_faithful, is_isomorphic
from .matrices import RingMatrix
from .rings import Integers, Product, Quadratic, Residue


@dataclass
class VerificationReport:
    case_id: str
    property: str
    passed: bool
    witness: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def fail(self, name, **witness):
        self.passed = False
        self.checks.append((name, False))
        if not self.witness:
            self.witness = {"check": name, **{k: str(v) for k, v in witness.items()}}

    def ok(self, name):
        self.checks.append((name, True))

    def __bool__(self):
        return self.passed


def _report(case_id, prop):
    return VerificationReport(case_id, prop, True)


# --- Smith normal form over Z -------------------------------------------------

def snf_oracle(A):
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    M = [list(map(int, r)) for r in A]
    if not M or not M[0]:
        return ()
    m, n = len(M), len(M[0])
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        M[t], M[i] = M[i], M[t]
        for r in M:
            r[t], r[j] = r[j], r[t]
        p = M[t][t]
        dirty = False
        for i in range(t + 1, m):
            q = M[i][t] // p
            M[i] = [x - q * y for x, y in zip(M[i], M[t])]
            dirty = dirty or M[i][t] != 0
        for j in range(t + 1, n):
            q = M[t][j] // p
            for r in M:
                r[j] -= q * r[t]
            dirty = dirty or M[t][j] != 0
        if dirty:
            continue
        bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
        if bad is not None:
            M[t] = [x + y for x, y in zip(M[t], M[bad[0]])]
            continue
        out.append(abs(p))
        t += 1
    return tuple(out)


# --- exhaustive finite-ring checks --------------------------------------------

def _elements(R):
    return list(R.elements())


def _principal(R, elems, x):
    return frozenset(r * x for r in elems)


def all_ideals(R, cap=1000):
    """Every ideal of a finite ring, as frozensets of elements."""
    if R.size > cap:
        raise ValueError(f"{R} has more than {cap} elements")
    elems = _elements(R)
    principal = {_principal(R, elems, x) for x in elems}
    ideals = set(principal)
    frontier = list(principal)
    while frontier:
        nxt = []
        for I in frontier:
            for P in principal:
                S = frozenset(a + b for a in I for b in P)
                if S not in ideals:
                    ideals.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(ideals, key=lambda s: (len(s), sorted(str(x) for x in s)))


def check_pp_lemma(R, cap=1000):
    """Annihilators are generated by idempotents; faithful ideals hold a non-zero-divisor."""
    rep = _report(str(R), "pp-lemma")
    elems = _elements(R)
    zero = R.zero
    idem = [e for e in elems if e * e == e]
    idem_ideals = {_principal(R, elems, e): e for e in idem}
    nzd = [x for x in elems if all(x * r != zero for r in elems if r != zero)]
    for I in all_ideals(R, cap):
        ann = frozenset(r for r in elems if all(r * x == zero for x in I))
        if ann not in idem_ideals:
            rep.fail("annihilator-idempotent", ring=R, ideal=sorted(map(str, I)),
                     annihilator=sorted(map(str, ann)))
        if ann == frozenset([zero]) and not any(x in I for x in nzd):
            rep.fail("faithful-has-nzd", ring=R, ideal=sorted(map(str, I)))
    if rep.passed:
        rep.ok("annihilator-idempotent")
        rep.ok("faithful-has-nzd")
    return rep


# --- stacked bases --------------------------------------------------------------

def verify_stacked(n, H, sb, case_id="stacked"):
    rep = _report(case_id, "stacked-bases")
    R = sb.ring
    I = RingMatrix.identity(R, n)
    ps = [s.projector for s in sb.summands]
    pi = sb.complement
    total = pi
    for p in ps:
        total = total + p
    if total != I:
        rep.fail("projectors-sum-to-identity", total=total)
    allp = ps + [pi]
    for i, p in enumerate(allp):
        for j, q in enumerate(allp):
            want = p if i == j else RingMatrix.zeros(R, n, n)
            if p @ q != want:
                rep.fail("projectors-orthogonal-idempotent", i=i, j=j)
    for k, s in enumerate(sb.summands):
        span = modules.module_lattice(R, s.gens, n)
        for g in s.gens:
            if s.projector.apply(g) != list(g):
                rep.fail("summand-fixed", summand=k, generator=g)
        for col in s.projector.columns():
            if not modules.contains(R, span, col):
                rep.fail("summand-image", summand=k, column=col)
        eps = sb.epsilons[k]
        if content(s.gens, R) != FinGenIdeal(R, [eps]):
            rep.fail("content-equals-support", summand=k, content=content(s.gens, R), eps=eps)
    for k in range(1, len(sb.epsilons)):
        if sb.epsilons[k] * sb.epsilons[k - 1] != sb.epsilons[k]:
            rep.fail("idempotent-chain", index=k)
    cols = [list(c) for c in (H.columns() if isinstance(H, RingMatrix) else H)]
    rec = sb.reconstruction_gens()
    rec_b = modules.module_lattice(R, rec, n) if rec else modules.module_lattice(R, [[R.zero] * n], n)
    H_b = modules.module_lattice(R, cols, n) if cols else modules.module_lattice(R, [[R.zero] * n], n)
    for h in cols:
        if not modules.contains(R, rec_b, h):
            rep.fail("H-in-reconstruction", generator=h)
            break
    for v in rec:
        if not modules.contains(R, H_b, v):
            rep.fail("reconstruction-in-H", generator=v)
            break
    if rep.passed:
        rep.ok("all")
    return rep


# --- decompositions ---------------------------------------------------------------------

def _module_lattice_of(module):
    R = module.ring
    cols = [list(c) for c in module.H.columns()] or [[R.zero] * module.n]
    return modules.module_lattice(R, cols, module.n)


def _block_size(R, e):
    return FinGenIdeal(R, [R.one - e]).index()


def verify_decomposition(module, D, seed=0, case_id="decompose"):
    rep = _report(case_id, "decomposition")
    R = module.ring
    errs = D.check()
    for e in errs:
        rep.fail("invariants", detail=e)
    if isinstance(R, Integers):
        d = snf_oracle([[x.value for x in row] for row in module.H.rows])
        want = [x for x in d if x != 1]
        got = [I.normal_form for I in D.torsion_chain]
        if got != want:
            rep.fail("snf-torsion", expected=want, got=got)
        if (D.free_rank or 0) != module.n - len(d):
            rep.fail("snf-free-rank", expected=module.n - len(d), got=D.free_rank)
    finite = isinstance(R, Residue) or (isinstance(R, Product) and R.is_finite)
    if finite:
        L = _module_lattice_of(module)
        from .ideals import _full_basis
        from . import lattice
        full = []
        for i in range(module.n):
            for r in _full_basis(R):
                full.append([0] * (i * R.zrank) + list(r) + [0] * ((module.n - i - 1) * R.zrank))
        size = lattice.quotient_size(lattice.hnf(full, module.n * R.zrank), L)
        pred = 1
        for I in D.torsion_chain:
            pred *= I.index()
        for e, k in zip(D.rank_idempotents, D.ranks):
            pred *= _block_size(R, e) ** k
        if size != pred:
            rep.fail("cardinality", module=size, decomposition=pred)
        unit_vecs = [[R.one if j == i else R.zero for j in range(module.n)] for i in range(module.n)]
        ann = FinGenIdeal(R, [R.from_coords(r) for r in modules.colon_vectors(R, unit_vecs, L, module.n)])
        supp = sum((e for e in D.rank_idempotents), R.zero)
        pred_ann = FinGenIdeal(R, [R.one - supp])
        if D.torsion_chain:
            pred_ann = pred_ann.intersect(D.torsion_chain[-1])
        if ann != pred_ann:
            rep.fail("annihilator", module=ann, decomposition=pred_ann)
    if isinstance(R, Quadratic):
        if not D.ranks:
            L = _module_lattice_of(module)
            from . import lattice
            size = lattice.quotient_size(lattice.hnf([[1 if i == j else 0 for j in range(2 * module.n)]
                                                      for i in range(2 * module.n)], 2 * module.n), L)
            pred = math.prod(I.norm() for I in D.torsion_chain)
            if size != pred:
                rep.fail("norm-bookkeeping", index=size, norms=pred)
        from .decomposition import PresentedModule, decompose, steinitz_check
        rng = random.Random(seed)
        cols = list(module.H.columns())
        rng.shuffle(cols)
        Hs = RingMatrix.from_columns(R, cols, module.n) if cols else module.H
        D2 = decompose(PresentedModule(R, module.n, Hs))
        if D2.torsion_chain != D.torsion_chain:
            rep.fail("rerun-chain", first=D.torsion_chain, second=D2.torsion_chain)
        if not (D2.steinitz == D.steinitz or is_isomorphic(D2.steinitz, D.steinitz)[0]):
            rep.fail("rerun-steinitz", first=D.steinitz, second=D2.steinitz)
        if not steinitz_check(D):
            rep.fail("steinitz-minors", steinitz=D.steinitz)
    if rep.passed:
        rep.ok("all")
    return rep


def verify_torsion_split(module, D, case_id="torsion-split"):
    """sigma: R^n -> R^n induces a retraction of M onto tM."""
    rep = _report(case_id, "torsion-split")
    R = module.ring
    n = module.n
    sigma = D.torsion_projector
    pi = RingMatrix.identity(R, n) - sigma
    if sigma @ sigma != sigma:
        rep.fail("sigma-idempotent")
    L = _module_lattice_of(module)
    for h in module.H.columns():
        if not modules.contains(R, L, sigma.apply(h)):
            rep.fail("sigma-preserves-H", generator=h)
        if any(pi.apply(h)):
            rep.fail("complement-kills-H", generator=h)
    if D.torsion_chain:
        _, t = is_faithful(D.torsion_chain[-1])
        for col in sigma.columns():
            if not modules.contains(R, L, [t * x for x in col]):
                rep.fail("image-is-torsion", column=col, nzd=t)
    else:
        for col in sigma.columns():
            if not modules.contains(R, L, col):
                rep.fail("image-is-torsion", column=col)
    for col in sigma.columns():
        if sigma.apply(col) != list(col):
            rep.fail("identity-on-tM", column=col)
    if rep.passed:
        rep.ok("all")
    return rep


def verify_diagonal(form, case_id="diagonalize"):
    rep = _report(case_id, "diagonal-form")
    for e in form.verify():
        rep.fail("diagonal", detail=e)
    if rep.passed:
        rep.ok("all")
    return rep
