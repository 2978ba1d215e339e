"""Complexity bounds recorded at each elimination step.

Every function returns :class:`BoundCheck` records; nothing here raises. The
caller decides whether a violation is fatal.
"""

from typing import Any, Dict, List, Sequence, Set

from ..kernel import Eps, EpsMatrix, Formula, degree, max_rank, rank
from ..proofsys import MeasureReport, ProofAnalysis, lex_decreased
from ..proofsys.closure import Closure, closures_by_matrix
from .hyperexp import hyperexp
from .trace import BoundCheck


def snapshot(analysis: ProofAnalysis, r: int) -> Dict[str, Any]:
    report = analysis.report
    return {
        "cc": report.cc,
        "rank": report.rank,
        "order": report.order_at(r),
        "matrix_order": report.matrix_order.get(r, 0),
        "mwd": report.mwd_at(r),
        "lines": len(analysis.proof),
        "cr": sorted(report.cr),
    }


def _rank_kept(after: MeasureReport, r: int) -> BoundCheck:
    return BoundCheck.of("rank", "r", r, after.rank)


def critical_step(before: MeasureReport, after: MeasureReport, r: int, w: int) -> List[BoundCheck]:
    """Only critical formulas belonged to the eliminated term of width ``w``."""
    k, m = before.cc, before.mwd_at(r)
    return [
        BoundCheck.of("cc", "k(w+1)", k * (w + 1), after.cc),
        BoundCheck.of("mwd", "mwd(w+1)", m * (w + 1), after.mwd_at(r)),
        _rank_kept(after, r),
    ]


def equality_step(before: MeasureReport, after: MeasureReport, r: int, w: int) -> List[BoundCheck]:
    """Only ε-equality formulas belonged to the eliminated term of width ``w``."""
    k, m = before.cc, before.mwd_at(r)
    cc_bound = k * (w + 1) if k == w else k * (w + 1) - 2 * w
    return [
        BoundCheck.of("cc", "k(w+1)-2w", cc_bound, after.cc),
        BoundCheck.of("mwd", "2mwd^2", 2 * m * m, after.mwd_at(r)),
        _rank_kept(after, r),
    ]


def mixed_step(before: MeasureReport, after: MeasureReport, r: int, arity: int, pd: int) -> List[BoundCheck]:
    """Both kinds of formula belonged to the eliminated term."""
    k, m = before.cc, before.mwd_at(r)
    return [
        BoundCheck.of("cc", "(k+a*p)mwd^2", (k + arity * pd) * m * m, after.cc),
        BoundCheck.of("mwd", "2mwd^2", 2 * m * m, after.mwd_at(r)),
        _rank_kept(after, r),
    ]


def order_decreased(before: ProofAnalysis, after: ProofAnalysis, r: int, removed: Eps) -> List[BoundCheck]:
    """Rank-r critical terms after the step are those before it, less ``removed``.

    A partner whose only formulas were ε-equalities with ``removed`` stops being critical,
    so the order can drop by more than one.
    """
    kept = {i.term for i in before.at_rank(r)} - {removed}
    new = [i.term for i in after.at_rank(r) if i.term not in kept]
    return [
        BoundCheck.of("order", "o(r)-1", before.report.order_at(r) - 1, after.report.order_at(r)),
        BoundCheck("terms", "no new rank-r terms", "0", len(new), not new),
    ]


def rank_level(
    before: MeasureReport, after: MeasureReport, r: int, old_length: int, new_length: int
) -> List[BoundCheck]:
    """All critical ε-terms of rank ``r`` are gone."""
    k = before.cc
    w, n = before.mwd_at(r), before.order_at(r)
    a, p = before.ma.get(r, 0), before.mpd.get(r, 0)
    return [
        BoundCheck.of("cc", "(k+a*p)2_2^((w+n)n)", hyperexp(2, 2, (w + n) * n) * (k + a * p), after.cc),
        BoundCheck.of("length", "len*2_2^(w+n+1)", hyperexp(2, 2, w + n + 1) * old_length, new_length),
        BoundCheck("order", "0", "0", after.order_at(r), after.order_at(r) == 0),
    ]


def eq_only_rank(before: MeasureReport, after: MeasureReport, r: int) -> List[BoundCheck]:
    """Function symbol substitution removed a rank carrying only ε-equality formulas."""
    checks = [
        BoundCheck.of("cc", "k", before.cc, after.cc),
        BoundCheck("cr", "CR unchanged", str(sorted(before.cr)), int(after.cr != before.cr), after.cr == before.cr),
    ]
    for lower in range(1, r):
        checks.append(BoundCheck.of(f"order@{lower}", "o(r')", before.order_at(lower), after.order_at(lower)))
        checks.append(
            BoundCheck.of(
                f"matrix_order@{lower}", "mo(r')", before.matrix_order.get(lower, 0), after.matrix_order.get(lower, 0)
            )
        )
    return checks


def _floor(value: Any) -> Any:
    return 1 if value == 0 else value


def first_theorem(k: int, arity: int, pd: int, length: int) -> BoundCheck:
    """Herbrand disjunction length of the whole pipeline, floored at one disjunct."""
    bound = _floor(hyperexp(2, 2 * k, 6 * k * k + 2 * k + arity * pd))
    return BoundCheck.of("length", "2_(2k)^(6k^2+2k+a*p)", bound, length)


def herbrand_pipeline(k: int, length: int) -> BoundCheck:
    """Length bound for a prenex existential theorem from its predicate-calculus proof."""
    return BoundCheck.of("length", "2_(2k)^(3k)", _floor(hyperexp(2, 2 * k, 3 * k)), length)


def closures_at(analysis: ProofAnalysis, r: int) -> Dict[EpsMatrix, Closure]:
    closures = closures_by_matrix(analysis.result, analysis.terms)
    return {g: c for g, c in closures.items() if any(i.rank == r for i in analysis.of_matrix(g))}


def closure_sizes(analysis: ProofAnalysis, r: int) -> List[BoundCheck]:
    checks = []
    for g, closure in closures_at(analysis, r).items():
        # wd=(g): ε-equality formulas belonging to any instance of g
        formulas: Set[Formula] = set()
        for info in analysis.of_matrix(g):
            formulas |= info.epseq_formulas
        wd_eq = len(formulas)
        checks.append(BoundCheck.of(f"closure {g}", "2^(wd=(g)^2)", 2 ** (wd_eq * wd_eq), closure.size))
    return checks


def closure_step(
    before: ProofAnalysis,
    after: ProofAnalysis,
    r: int,
    pd: int,
    removed: Eps,
    greatest: bool,
) -> List[BoundCheck]:
    k, m = before.report.cc, before.report.mwd_at(r)
    checks = [
        BoundCheck.of("cc", "2(p+1)k^2", 2 * (pd + 1) * k * k, after.report.cc),
        BoundCheck.of("mwd", "2mwd^2", 2 * m * m, after.report.mwd_at(r)),
        _rank_kept(after.report, r),
    ]
    old = closures_at(before, r)
    new = closures_at(after, r)
    for g, closure in new.items():
        if g in old:
            checks.append(BoundCheck.of(f"closure {g}", "|CL| before", old[g].size, closure.size))
    if greatest:
        decreased = lex_decreased([i.term for i in before.at_rank(r)], [i.term for i in after.at_rank(r)])
        checks.append(BoundCheck("proof-order", "lex decrease", "0", 0 if decreased else 1, decreased))
    checks.append(BoundCheck("removed", "e gone", "0", int(removed in after.terms), removed not in after.terms))
    return checks


def closure_rank(before: MeasureReport, after: MeasureReport, steps: int) -> List[BoundCheck]:
    k, p = before.cc, before.max_property_degree
    return [
        BoundCheck.of("steps", "2_3^(2k^2+3k)", hyperexp(2, 3, 2 * k * k + 3 * k), steps),
        BoundCheck.of("cc", "2_3^((k+1)^2+p)", hyperexp(2, 3, (k + 1) ** 2 + p), after.cc),
    ]


def closure_theorem(k: int, pd: int, length: int) -> BoundCheck:
    return BoundCheck.of("length", "2_(3k+2)^(k+p)", _floor(hyperexp(2, 3 * k + 2, k + pd)), length)


def identity(
    proof_report: MeasureReport, template: Formula, names: Sequence[str], instances: Sequence[Formula]
) -> List[BoundCheck]:
    return [
        BoundCheck.of("cc", "|b|deg(A)", len(names) * degree(template), proof_report.cc),
        BoundCheck.of("rank", "rk(A)", max((max_rank(f) for f in instances), default=0), proof_report.rank),
    ]


def subst_ca(proof_report: MeasureReport, g: EpsMatrix, target: Eps, witnesses: int) -> List[BoundCheck]:
    a = g.arity
    deg = degree(g.term.body)
    r = rank(target)
    return [
        BoundCheck.of("cc", "|b|(|t|+1)deg(A)+|t|", a * (witnesses + 1) * deg + witnesses, proof_report.cc),
        BoundCheck("rank", "rk(g)", str(r), proof_report.rank, proof_report.rank == r),
        BoundCheck.of("width", "|t|", witnesses, proof_report.mwd_at(r)),
    ]


def subst_epseq(proof_report: MeasureReport) -> BoundCheck:
    return BoundCheck("cc", "1", "1", proof_report.cc, proof_report.cc == 1)
