"""Deterministic reports.

The machine format is line oriented::

    stacked-bases-report v1
    key: value
    ...

Keys appear in a fixed order. Matrices use the ``a,b;c,d`` literal grammar
and ideals the ``ideal(...)`` grammar, so every value re-parses. Generator
lists are printed as matrices whose columns are the generators.
"""
from .literals import format_element, format_ideal_gens, format_matrix, format_ring
from .matrices import RingMatrix

HEADER = "stacked-bases-report v1"


def fmt_ideal(I):
    return format_ideal_gens(I.canonical_gens())


def fmt_columns(R, vectors, n):
    if not vectors:
        return "none"
    return format_matrix(RingMatrix.from_columns(R, [list(v) for v in vectors], n))


class Report:
    def __init__(self, command, ring):
        self.items = [("command", command), ("ring", format_ring(ring))]
        self.witness = []

    def add(self, key, value):
        self.items.append((key, str(value)))

    def add_witness(self, key, value):
        self.witness.append((key, str(value)))

    def render(self, fmt="text"):
        if fmt == "machine":
            lines = [HEADER] + [f"{k}: {v}" for k, v in self.items]
            if self.witness:
                lines.append("witness:")
                lines += [f"  {k}: {v}" for k, v in self.witness]
            return "\n".join(lines) + "\n"
        width = max(len(k) for k, _ in self.items + self.witness)
        lines = [f"{k.replace('.', ' ').ljust(width)}  {v}" for k, v in self.items]
        if self.witness:
            lines.append("witness")
            lines += [f"  {k.ljust(width)}  {v}" for k, v in self.witness]
        return "\n".join(lines) + "\n"


def add_stacked(rep, sb, prefix="stacked"):
    R = sb.ring
    rep.add(f"{prefix}.route", sb.route)
    rep.add(f"{prefix}.m", sb.m)
    for k, (U, e, J) in enumerate(zip(sb.summands, sb.epsilons, sb.stage_ideals), 1):
        rep.add(f"{prefix}.{k}.ideal", fmt_ideal(J))
        rep.add(f"{prefix}.{k}.epsilon", format_element(e))
        rep.add(f"{prefix}.{k}.generators", fmt_columns(R, U.gens, sb.n))
        rep.add(f"{prefix}.{k}.projector", format_matrix(U.projector))
    rep.add(f"{prefix}.complement", format_matrix(sb.complement))
    for name in ("P", "D", "Q"):
        if name in sb.transforms:
            rep.add(f"{prefix}.transform.{name}", format_matrix(sb.transforms[name]))


def decompose_report(module, D):
    rep = Report("decompose", module.ring)
    rep.add("input.n", module.n)
    rep.add("input.H", format_matrix(module.H))
    rep.add("torsion.count", len(D.torsion_chain))
    for k, I in enumerate(D.torsion_chain, 1):
        rep.add(f"torsion.{k}", fmt_ideal(I))
    rep.add("projective.blocks", len(D.ranks))
    for k, (e, r) in enumerate(zip(D.rank_idempotents, D.ranks), 1):
        rep.add(f"projective.{k}.idempotent", format_element(e))
        rep.add(f"projective.{k}.rank", r)
    fr = D.free_rank
    rep.add("free_rank", "variable" if fr is None else fr)
    rep.add("steinitz", fmt_ideal(D.steinitz))
    add_stacked(rep, D.stacked)
    rep.add("torsion_projector", format_matrix(D.torsion_projector))
    return rep


def diagonal_report(form):
    rep = Report("diagonalize", form.A.ring)
    rep.add("input.A", format_matrix(form.A))
    rep.add("diagonal", ", ".join(format_element(x) for x in form.diagonal))
    rep.add("P", format_matrix(form.P))
    rep.add("D", format_matrix(form.D))
    rep.add("Q", format_matrix(form.Q))
    return rep


def stacked_report(n, H, sb):
    rep = Report("stacked", sb.ring)
    rep.add("input.n", n)
    rep.add("input.H", format_matrix(H))
    add_stacked(rep, sb)
    return rep


def verification_report(command, ring, reports):
    rep = Report(command, ring)
    rep.add("cases", len(reports))
    for r in reports:
        rep.add(f"check.{r.case_id}.{r.property}", "pass" if r.passed else "fail")
    rep.add("status", "pass" if all(r.passed for r in reports) else "fail")
    for r in reports:
        if not r.passed:
            for k, v in r.witness.items():
                rep.add_witness(f"{r.case_id}.{k}", v)
    return rep
