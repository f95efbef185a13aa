"""Seeded acceptance suite shared by ``stacked-bases selftest`` and the tests.

Each criterion returns a CriterionResult; ``reports`` holds the
machine-format reports of every case so that reruns can be compared byte
for byte.
"""
import hashlib
import random
import time
from dataclasses import dataclass, field

from . import modules
from .decomposition import PresentedModule, decompose, invariants_equal, pair_reduce
from .diagonal import diagonalize
from .ideals import FinGenIdeal, is_isomorphic, is_principal
from .matrices import RingMatrix
from .oracles import (check_pp_lemma, snf_oracle, verify_decomposition, verify_stacked,
                      verify_torsion_split)
from .report import decompose_report, diagonal_report, stacked_report
from .rings import Integers, Product, Quadratic, Residue
from .stacked import stacked_bases
from .summands import check_summand, ucs_summand

FULL = {1: 200, 2: 50, 3: 100, 4: 100, 5: 1296, 6: 50, 8: 20}
FAST = {1: 20, 2: 4, 3: 12, 4: 10, 5: 1296, 6: 8, 8: 4}
BUDGET = {1: 10.0, 2: 60.0, 3: 120.0, 4: 30.0, 5: 60.0, 6: 120.0, 7: 30.0, 8: 30.0}
PP_RINGS = (Residue(4), Residue(6), Residue(12), Residue(30), Product(Residue(4), Residue(9)))

Z = Integers()
Q5 = Quadratic(-5)


@dataclass
class CriterionResult:
    number: int
    name: str
    cases: int = 0
    passed_cases: int = 0
    elapsed: float = 0.0
    budget: float = None
    failures: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    @property
    def within_budget(self):
        return self.budget is None or self.elapsed < self.budget

    @property
    def passed(self):
        return self.cases > 0 and self.passed_cases == self.cases and self.within_budget

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.within_budget else f" over budget ({self.budget:.0f}s)"
        first = f"; first failure: {self.failures[0]}" if self.failures else ""
        return (f"[{status}] criterion {self.number} {self.name}: "
                f"{self.passed_cases}/{self.cases} cases, {self.elapsed:.2f}s{extra}{first}")

    def digest(self):
        return hashlib.sha256("".join(self.reports).encode()).hexdigest()


def _tally(res, ok, why=None):
    res.cases += 1
    if ok:
        res.passed_cases += 1
    elif len(res.failures) < 5:
        res.failures.append(why)


# --- random instances ------------------------------------------------------------

def random_int_matrix(rng, max_dim=4, bound=30):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return RingMatrix(Z, [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)])


def random_element(rng, R, bound=2):
    if isinstance(R, Integers):
        return R(rng.randint(-bound, bound))
    if isinstance(R, Residue):
        return R(rng.randrange(R.modulus))
    if isinstance(R, Quadratic):
        return R.from_coords([rng.randint(-bound, bound), rng.randint(-bound, bound)])
    return R(tuple(random_element(rng, f, bound).value for f in R.factors))


def random_matrix(rng, R, m, n, bound=2):
    return RingMatrix(R, [[random_element(rng, R, bound) for _ in range(n)] for _ in range(m)])


def random_invertible(rng, R, n, steps=3):
    """Product of a permutation and elementary transvections with small entries."""
    rows = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [rows[p] for p in perm]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        r = random_element(rng, R, 1)
        rows[i] = [x + r * y for x, y in zip(rows[i], rows[j])]
    return RingMatrix(R, rows)


def random_ideal(rng, R=Q5, bound=3):
    while True:
        gens = [random_element(rng, R, bound) for _ in range(rng.randint(1, 2))]
        I = FinGenIdeal(R, gens)
        if not I.is_zero():
            return I


def random_unit_content(rng, R, n, count=2, bound=3, spread=False):
    """Random generators with unit content; with ``spread`` no single one has it."""
    while True:
        gens = [[random_element(rng, R, bound) for _ in range(n)] for _ in range(count)]
        c = FinGenIdeal(R, [x for v in gens for x in v])
        if not c.is_unit_ideal():
            continue
        if spread and any(FinGenIdeal(R, v).is_unit_ideal() for v in gens):
            continue
        return gens


def _int_cases(seed, count):
    rng = random.Random(seed)
    return [random_int_matrix(rng) for _ in range(count)]


# --- criteria ---------------------------------------------------------------------------

def criterion_1(seed=1, count=200):
    res = CriterionResult(1, "SNF agreement", budget=BUDGET[1])
    cases = _int_cases(seed, count)
    t = time.perf_counter()
    for k, H in enumerate(cases):
        mod = PresentedModule(Z, H.nrows, H)
        D = decompose(mod)
        d = snf_oracle([[x.value for x in row] for row in H.rows])
        want = [x for x in d if x != 1]
        got = [I.normal_form for I in D.torsion_chain]
        ok = got == want and D.free_rank == H.nrows - len(d)
        _tally(res, ok, f"case {k}: H={H} chain={got} snf={d} free={D.free_rank}")
        res.reports.append(decompose_report(mod, D).render("machine"))
    res.elapsed = time.perf_counter() - t
    return res


def criterion_2(seed=1, count=50):
    res = CriterionResult(2, "GL-invariance", budget=BUDGET[2])
    rng = random.Random(seed)
    t = time.perf_counter()
    for R, dims, bound in ((Z, 3, 6), (Q5, 2, 1)):
        for k in range(count):
            m, n = rng.randint(1, dims), rng.randint(1, dims)
            H = random_matrix(rng, R, m, n, bound)
            P = random_invertible(rng, R, m)
            Qm = random_invertible(rng, R, n)
            H2 = P @ H @ Qm
            D1 = decompose(PresentedModule(R, m, H))
            D2 = decompose(PresentedModule(R, m, H2))
            ok = invariants_equal(D1, D2)
            _tally(res, ok, f"{R} case {k}: H={H} PHQ={H2}")
            res.reports.append(decompose_report(PresentedModule(R, m, H2), D2).render("machine"))
    res.elapsed = time.perf_counter() - t
    return res


def criterion_3(seed=1, count=100):
    res = CriterionResult(3, "stacked reconstruction", budget=BUDGET[3])
    rng = random.Random(seed)
    rings = (Z, Product(Z, Z), Product(Residue(12), Residue(5)), Q5)
    t = time.perf_counter()
    for k in range(count):
        R = rings[k % len(rings)]
        n, cols = rng.randint(1, 3), rng.randint(1, 3)
        bound = 1 if isinstance(R, Quadratic) else 4
        H = random_matrix(rng, R, n, cols, bound)
        sb = stacked_bases(n, H)
        rep = verify_stacked(n, H, sb, case_id=f"c3-{k}")
        _tally(res, rep.passed, f"{R} case {k}: H={H} witness={rep.witness}")
        res.reports.append(stacked_report(n, H, sb).render("machine"))
    res.elapsed = time.perf_counter() - t
    return res


def criterion_4(seed=1, count=100):
    res = CriterionResult(4, "ideal laws in Q[-5]", budget=BUDGET[4])
    R = Q5
    w = R.omega
    t = time.perf_counter()
    P2 = FinGenIdeal(R, [2, 1 + w])
    P3 = FinGenIdeal(R, [3, 1 + w])
    P3b = FinGenIdeal(R, [3, 1 - w])
    _tally(res, P2 * P2 == FinGenIdeal(R, [2]), "P2^2 != (2)")
    _tally(res, P3 * P3b == FinGenIdeal(R, [3]), "P3 P3bar != (3)")
    _tally(res, is_principal(P2) is None, "P2 reported principal")
    iso, wit = is_isomorphic(P2, P3)
    ok = iso and P3 * wit[1] == P2 * wit[0]
    _tally(res, ok, "P2, P3 not isomorphic with a verified witness")
    res.reports.append(f"{P2 * P2}|{P3 * P3b}|{wit}\n")
    rng = random.Random(seed)
    for k in range(count):
        I, J = random_ideal(rng), random_ideal(rng)
        ok = (I * J).norm() == I.norm() * J.norm()
        _tally(res, ok, f"pair {k}: N({I}{J}) != N({I})N({J})")
        res.reports.append(f"{I}*{J}={I * J}:{(I * J).norm()}\n")
    res.elapsed = time.perf_counter() - t
    return res


def criterion_5(seed=1, count=1296):
    res = CriterionResult(5, "elementary divisors over Z/6", budget=BUDGET[5])
    R = Residue(6)
    t = time.perf_counter()
    for k in range(min(count, 1296)):
        v = [(k // 6 ** i) % 6 for i in range(4)]
        A = RingMatrix(R, [v[:2], v[2:]])
        try:
            form = diagonalize(A)
            errs = form.verify()
        except Exception as exc:  # a crash is a failed case
            errs = [repr(exc)]
            form = None
        _tally(res, not errs, f"A={A}: {errs}")
        if form is not None:
            res.reports.append(diagonal_report(form).render("machine"))
    res.elapsed = time.perf_counter() - t
    return res


def criterion_6(seed=1, count=50):
    res = CriterionResult(6, "UCS property", budget=BUDGET[6])
    rng = random.Random(seed)
    spaces = ((Z, 2), (Z, 3), (Product(Z, Z), 2), (Q5, 2))
    t = time.perf_counter()
    for k in range(count):
        R, n = spaces[k % len(spaces)]
        bound = 2 if isinstance(R, Quadratic) else 6
        spread = k % 2 == 1
        M = random_unit_content(rng, R, n, count=rng.randint(2 if spread else 1, 3),
                                bound=bound, spread=spread)
        U = ucs_summand(M, n)
        ok, why = check_summand(U, M)
        _tally(res, ok, f"{R}^{n} M={M}: {why}")
        res.reports.append(f"{R}|{[[str(x) for x in g] for g in U.gens]}|{U.projector}\n")
    res.elapsed = time.perf_counter() - t
    return res


def criterion_7(seed=1, rings=PP_RINGS):
    res = CriterionResult(7, "pp-ring lemma", budget=BUDGET[7])
    t = time.perf_counter()
    for R in rings:
        rep = check_pp_lemma(R)
        _tally(res, rep.passed, f"{R}: {rep.witness}")
        res.reports.append(f"{R}|{rep.passed}|{sorted(rep.witness.items())}\n")
    res.elapsed = time.perf_counter() - t
    return res


def criterion_8(seed=1, count=20):
    res = CriterionResult(8, "pair reduction", budget=BUDGET[8])
    R = Q5
    w = R.omega
    t = time.perf_counter()
    P2 = FinGenIdeal(R, [2, 1 + w])
    red = pair_reduce(P2, P2)
    ok, why = red.verify()
    _tally(res, ok and red.product == FinGenIdeal(R, [2]), f"P2+P2: {why} product={red.product}")
    res.reports.append(f"{red.a}|{red.b}|{red.i0}|{red.j0}|{red.product}\n")
    rng = random.Random(seed)
    for k in range(count):
        I, J = random_ideal(rng), random_ideal(rng)
        red = pair_reduce(I, J)
        ok, why = red.verify()
        _tally(res, ok and red.product == I * J, f"pair {k} ({I}, {J}): {why}")
        res.reports.append(f"{I}|{J}|{red.a}|{red.b}|{red.i0}|{red.j0}\n")
    res.elapsed = time.perf_counter() - t
    return res


def criterion_9(seed=1, count=200):
    res = CriterionResult(9, "torsion split")
    t = time.perf_counter()
    for k, H in enumerate(_int_cases(seed, count)):
        mod = PresentedModule(Z, H.nrows, H)
        D = decompose(mod)
        rep = verify_torsion_split(mod, D, case_id=f"c9-{k}")
        _tally(res, rep.passed, f"case {k}: H={H} witness={rep.witness}")
        res.reports.append(f"{D.torsion_projector}|{rep.passed}\n")
    res.elapsed = time.perf_counter() - t
    return res


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def _kwargs(num, scope):
    counts = FULL if scope == "full" else FAST
    if num == 9:
        return {"count": counts[1]}
    if num == 7:
        return {}
    return {"count": counts[num]}


def run_criterion(num, seed=1, scope="full"):
    return CRITERIA[num](seed=seed, **_kwargs(num, scope))


def criterion_10(seed=1, scope="full", first=None):
    """Rerun 1-9 and compare report digests byte for byte."""
    res = CriterionResult(10, "determinism")
    t = time.perf_counter()
    first = first or {n: run_criterion(n, seed, scope) for n in CRITERIA}
    for n in CRITERIA:
        again = run_criterion(n, seed, scope)
        _tally(res, again.digest() == first[n].digest(), f"criterion {n} reports differ")
    res.elapsed = time.perf_counter() - t
    return res


def run_suite(seed=1, scope="full", only=None):
    nums = only or list(CRITERIA)
    results = [run_criterion(n, seed, scope) for n in nums]
    if only is None or 10 in (only or []):
        results.append(criterion_10(seed, scope, {r.number: r for r in results}))
    return results
