"""Propositional validity with atoms taken up to α-equivalence.

Predicate atoms, equations and quantified formulas are opaque atoms. Small atom
sets are decided by a bit-parallel truth table; larger ones by a DPLL search on
the Tseitin clauses of the negation, under a step cap.
"""

import logging
import threading
import weakref
from typing import Dict, List, Optional, Tuple

from ..config import TautologyConfig, current_tautology_config
from ..errors import ResourceLimitError
from ..kernel import And, Formula, Imp, Node, Not, Or

logger = logging.getLogger(__name__)

_CONNECTIVES = (Not, Imp, And, Or)

_verdicts: "weakref.WeakKeyDictionary[Formula, Dict[Tuple[int, int], bool]]" = weakref.WeakKeyDictionary()
_verdicts_lock = threading.Lock()


def atoms(formula: Formula) -> List[Formula]:
    """Distinct propositional atoms of ``formula`` in left-to-right order."""
    out: List[Formula] = []
    seen = set()
    stack: List[Node] = [formula]
    while stack:
        n = stack.pop()
        if isinstance(n, _CONNECTIVES):
            stack.extend(reversed(n.children()))
        elif id(n) not in seen:
            seen.add(id(n))
            assert isinstance(n, Formula)
            out.append(n)
    return out


def _column(i: int, rows: int) -> int:
    width = 1 << i
    unit = ((1 << width) - 1) << width
    period = 1 << (i + 1)
    return unit * (((1 << rows) - 1) // ((1 << period) - 1))


def _truth_table(formula: Formula, atom_list: List[Formula]) -> bool:
    n = len(atom_list)
    if n == 0:
        rows = 1
        full = 1
        env: Dict[int, int] = {}
    else:
        rows = 1 << n
        full = (1 << rows) - 1
        env = {id(a): _column(i, rows) for i, a in enumerate(atom_list)}
    cache: Dict[int, int] = {}

    def value(f: Node) -> int:
        hit = env.get(id(f))
        if hit is not None:
            return hit
        hit = cache.get(id(f))
        if hit is not None:
            return hit
        match f:
            case Not(body):
                v = full ^ value(body)
            case Imp(left, right):
                v = (full ^ value(left)) | value(right)
            case And(left, right):
                v = value(left) & value(right)
            case Or(left, right):
                v = value(left) | value(right)
            case _:
                raise AssertionError(f"Unexpected atom {f!r}")
        cache[id(f)] = v
        return v

    return value(formula) == full


def _tseitin(formula: Formula, atom_list: List[Formula]) -> List[List[int]]:
    """Clauses equisatisfiable with the negation of ``formula``."""
    ids: Dict[int, int] = {id(a): i + 1 for i, a in enumerate(atom_list)}
    clauses: List[List[int]] = []
    counter = [len(atom_list)]

    def lit(f: Node) -> int:
        known = ids.get(id(f))
        if known is not None:
            return known
        if isinstance(f, Not):
            v = -lit(f.body)
            ids[id(f)] = v
            return v
        counter[0] += 1
        g = counter[0]
        ids[id(f)] = g
        match f:
            case Imp(left, right):
                a, b = lit(left), lit(right)
                clauses.extend([[-g, -a, b], [a, g], [-b, g]])
            case And(left, right):
                a, b = lit(left), lit(right)
                clauses.extend([[-g, a], [-g, b], [-a, -b, g]])
            case Or(left, right):
                a, b = lit(left), lit(right)
                clauses.extend([[-g, a, b], [-a, g], [-b, g]])
            case _:
                raise AssertionError(f"Unexpected node {f!r}")
        return g

    clauses.append([-lit(formula)])
    return clauses


def _satisfiable(clauses: List[List[int]], max_steps: int) -> bool:
    steps = 0

    def propagate(assignment: Dict[int, bool]) -> Optional[Dict[int, bool]]:
        nonlocal steps
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                steps += 1
                if steps > max_steps:
                    raise ResourceLimitError(f"Satisfiability search exceeded {max_steps} steps")
                unassigned = 0
                last = 0
                satisfied = False
                for l in clause:
                    v = assignment.get(abs(l))
                    if v is None:
                        unassigned += 1
                        last = l
                    elif v == (l > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if unassigned == 0:
                    return None
                if unassigned == 1:
                    assignment[abs(last)] = last > 0
                    changed = True
        return assignment

    def search(assignment: Dict[int, bool]) -> bool:
        result = propagate(assignment)
        if result is None:
            return False
        for clause in clauses:
            if any(result.get(abs(l)) == (l > 0) for l in clause):
                continue
            for l in clause:
                if abs(l) not in result:
                    for choice in (l > 0, l <= 0):
                        trial = dict(result)
                        trial[abs(l)] = choice
                        if search(trial):
                            return True
                    return False
        return True

    return search({})


def is_tautology(formula: Formula, config: Optional[TautologyConfig] = None) -> bool:
    config = config or current_tautology_config()
    key = (config.max_table_atoms, config.max_search_steps)
    with _verdicts_lock:
        known = _verdicts.get(formula, {}).get(key)
    if known is not None:
        return known
    atom_list = atoms(formula)
    if len(atom_list) <= config.max_table_atoms:
        verdict = _truth_table(formula, atom_list)
    else:
        logger.debug(f"Deciding tautology over {len(atom_list)} atoms by search")
        verdict = not _satisfiable(_tseitin(formula, atom_list), config.max_search_steps)
    with _verdicts_lock:
        _verdicts.setdefault(formula, {})[key] = verdict
    return verdict


def recognize_tautology(formula: Formula) -> bool:
    return is_tautology(formula)
