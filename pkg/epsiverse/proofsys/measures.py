"""Proof-level complexity measures: critical count, rank, order, width, arity and property degree."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, FrozenSet, List, Optional, Set

from ..kernel import Eps, EpsMatrix, Formula, degree, eps_matrix_of, format_term, property_degree, rank
from .closure import closures_by_matrix
from .system import EqualityMode

if TYPE_CHECKING:
    from .checker import CheckResult


@dataclass
class CriticalTermInfo:
    """Everything a proof says about one critical ε-term."""

    term: Eps
    rank: int
    degree: int
    matrix: EpsMatrix
    critical_lines: List[int] = field(default_factory=list)
    epseq_lines: List[int] = field(default_factory=list)
    critical_formulas: Set[Formula] = field(default_factory=set)
    epseq_formulas: Set[Formula] = field(default_factory=set)

    @property
    def width_critical(self) -> int:
        return len(self.critical_formulas)

    @property
    def width_equality(self) -> int:
        return len(self.epseq_formulas)

    @property
    def width(self) -> int:
        return self.width_critical + self.width_equality


def collect_terms(result: "CheckResult") -> Dict[Eps, CriticalTermInfo]:
    """Critical ε-terms of a checked proof, in order of first appearance."""
    terms: Dict[Eps, CriticalTermInfo] = {}

    def entry(e: Eps) -> CriticalTermInfo:
        info = terms.get(e)
        if info is None:
            info = CriticalTermInfo(e, rank(e), degree(e), eps_matrix_of(e)[0])
            terms[e] = info
        return info

    for i, info in enumerate(result.lines):
        if info is None:
            continue
        f = result.proof.lines[i].formula
        for e in info.belongs_to:
            target = entry(e)
            if info.kind == "critical":
                target.critical_lines.append(i)
                target.critical_formulas.add(f)
            else:
                target.epseq_lines.append(i)
                target.epseq_formulas.add(f)
    return terms


@dataclass
class MeasureReport:
    cc: int
    cc_eps: int
    cc_eq: int
    cc_quant: int
    size: int
    symbols: int
    degree: int
    rank: int
    order: Dict[int, int]
    matrix_order: Dict[int, int]
    mwd: Dict[int, int]
    ma: Dict[int, int]
    mpd: Dict[int, int]
    cr: FrozenSet[int]
    widths: Dict[str, Dict[str, int]]
    closures: Optional[Dict[str, int]] = None

    @property
    def max_arity(self) -> int:
        return max(self.ma.values(), default=0)

    @property
    def max_property_degree(self) -> int:
        return max(self.mpd.values(), default=0)

    def order_at(self, r: int) -> int:
        return self.order.get(r, 0)

    def mwd_at(self, r: int) -> int:
        return self.mwd.get(r, 0)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "cc": self.cc,
            "cc_eps": self.cc_eps,
            "cc_eq": self.cc_eq,
            "cc_quant": self.cc_quant,
            "size": self.size,
            "symbols": self.symbols,
            "degree": self.degree,
            "rank": self.rank,
            "order": {str(r): n for r, n in sorted(self.order.items())},
            "matrix_order": {str(r): n for r, n in sorted(self.matrix_order.items())},
            "mwd": {str(r): n for r, n in sorted(self.mwd.items())},
            "ma": {str(r): n for r, n in sorted(self.ma.items())},
            "mpd": {str(r): n for r, n in sorted(self.mpd.items())},
            "cr": sorted(self.cr),
            "widths": self.widths,
        }
        if self.closures is not None:
            data["closures"] = self.closures
        return data


def compute_report(result: "CheckResult") -> MeasureReport:
    proof = result.proof
    critical: Set[Formula] = set()
    epseq: Set[Formula] = set()
    quant: Set[Formula] = set()
    for i, info in enumerate(result.lines):
        assert info is not None
        f = proof.lines[i].formula
        if info.kind == "critical":
            critical.add(f)
        elif info.kind == "epseq":
            epseq.add(f)
        elif info.kind in ("allminus", "explus"):
            quant.add(f)

    terms = collect_terms(result)
    order: Dict[int, int] = {}
    matrices: Dict[int, Set[EpsMatrix]] = {}
    mwd: Dict[int, int] = {}
    ma: Dict[int, int] = {}
    mpd: Dict[int, int] = {}
    cr: Set[int] = set()
    widths: Dict[str, Dict[str, int]] = {}
    for e, info in terms.items():
        r = info.rank
        order[r] = order.get(r, 0) + 1
        matrices.setdefault(r, set()).add(info.matrix)
        mwd[r] = max(mwd.get(r, 0), info.width)
        ma[r] = max(ma.get(r, 0), info.matrix.arity)
        if info.epseq_formulas:
            mpd[r] = max(mpd.get(r, 0), property_degree(e))
        if info.critical_formulas:
            cr.add(r)
        widths[format_term(e)] = {
            "rank": r,
            "degree": info.degree,
            "wd_eps": info.width_critical,
            "wd_eq": info.width_equality,
            "wd": info.width,
        }

    formulas = proof.formulas()
    closures = None
    if result.system.eps_equality is EqualityMode.POSITIONAL:
        closures = {format_term(g.term): c.size for g, c in closures_by_matrix(result, terms).items()}
    return MeasureReport(
        cc=len(critical) + len(epseq) + len(quant),
        cc_eps=len(critical),
        cc_eq=len(epseq),
        cc_quant=len(quant),
        size=len(formulas),
        symbols=sum(f.size for f in formulas),
        degree=max((degree(f) for f in formulas), default=0),
        rank=max(order.keys(), default=0),
        order=order,
        matrix_order={r: len(ms) for r, ms in matrices.items()},
        mwd=mwd,
        ma=ma,
        mpd=mpd,
        cr=frozenset(cr),
        widths=widths,
        closures=closures,
    )
