"""Line-oriented proof files.

::

    # comment
    axiom: P(c)
    1. P(c) ; ax 1
    2. P(c) -> exists x. P(x) ; explus
    3. exists x. P(x) ; mp 1 2

Lines and axioms are numbered from 1. Positions in ``epseq[i]`` count matrix
parameters from 0.
"""

import logging
import re
from pathlib import Path
from typing import List, Optional, Union

from ..errors import ParseError
from ..kernel import Eps, Formula, format_formula, format_term, parse_formula, parse_term
from .proof import (
    Axiom,
    Critical,
    EpsEquality,
    EqAxiom,
    ExistsMinus,
    ExistsPlus,
    ForallMinus,
    ForallPlus,
    Justification,
    Line,
    ModusPonens,
    Proof,
    Tautology,
)
from .recognizers import EQ_KINDS

logger = logging.getLogger(__name__)

_LINE = re.compile(r"^\s*(\d+)\s*\.\s*(.*)$")
_BRACKETED = re.compile(r"^(\w+)\s*\[(.*)\]$")


def split_top_level(text: str, separator: str = ",") -> List[str]:
    """Split on ``separator`` outside parentheses and brackets."""
    parts: List[str] = []
    depth = 0
    current: List[str] = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == separator and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    parts.append("".join(current).strip())
    return parts


def _ints(words: List[str], count: int, where: Optional[int]) -> List[int]:
    if len(words) != count:
        raise ParseError(f"Expected {count} numbers", where)
    try:
        return [int(w) for w in words]
    except ValueError:
        raise ParseError(f"Expected line numbers, got '{' '.join(words)}'", where)


def parse_justification(text: str, where: Optional[int] = None) -> Justification:
    text = text.strip()
    bracket = _BRACKETED.match(text)
    if bracket:
        head, inner = bracket.group(1), bracket.group(2)
        if head == "eq":
            if inner not in EQ_KINDS:
                raise ParseError(f"Unknown EQ schema '{inner}'", where)
            return EqAxiom(inner)
        if head == "epseq":
            try:
                return EpsEquality(int(inner))
            except ValueError:
                raise ParseError(f"Bad ε-equality position '{inner}'", where)
        if head == "crit":
            parts = split_top_level(inner)
            if len(parts) != 2:
                raise ParseError("crit[...] takes a term and a witness", where)
            term, witness = parse_term(parts[0]), parse_term(parts[1])
            if not isinstance(term, Eps):
                raise ParseError(f"Critical term must be an ε-term, got '{parts[0]}'", where)
            return Critical(term, witness)
        raise ParseError(f"Unknown justification '{text}'", where)

    words = text.split()
    if not words:
        raise ParseError("Missing justification", where)
    head, rest = words[0], words[1:]
    simple = {
        "taut": Tautology(),
        "eq": EqAxiom(),
        "crit": Critical(),
        "epseq": EpsEquality(),
        "allminus": ForallMinus(),
        "explus": ExistsPlus(),
    }
    if head in simple and not rest:
        return simple[head]
    if head == "mp":
        minor, major = _ints(rest, 2, where)
        return ModusPonens(minor - 1, major - 1)
    if head in ("allplus", "exminus"):
        if len(rest) != 2:
            raise ParseError(f"{head} takes a line number and an eigenvariable", where)
        (premise,) = _ints(rest[:1], 1, where)
        cls = ForallPlus if head == "allplus" else ExistsMinus
        return cls(premise - 1, rest[1])
    if head == "ax":
        (k,) = _ints(rest, 1, where)
        return Axiom(k - 1)
    raise ParseError(f"Unknown justification '{text}'", where)


def format_justification(j: Justification) -> str:
    match j:
        case Tautology():
            return "taut"
        case EqAxiom(kind):
            return f"eq[{kind}]" if kind else "eq"
        case Critical(term, witness):
            if term is None or witness is None:
                return "crit"
            return f"crit[{format_term(term)}, {format_term(witness)}]"
        case EpsEquality(position):
            return "epseq" if position is None else f"epseq[{position}]"
        case ForallMinus():
            return "allminus"
        case ExistsPlus():
            return "explus"
        case ForallPlus(premise, eigenvariable):
            return f"allplus {premise + 1} {eigenvariable}"
        case ExistsMinus(premise, eigenvariable):
            return f"exminus {premise + 1} {eigenvariable}"
        case ModusPonens(minor, major):
            return f"mp {minor + 1} {major + 1}"
        case Axiom(index):
            return f"ax {index + 1}"
        case _:
            raise AssertionError(f"Unknown justification {j!r}")


def parse_proof(text: str) -> Proof:
    axioms: List[Formula] = []
    lines: List[Line] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            if stripped.startswith("axiom:"):
                if lines:
                    raise ParseError("Axioms must precede proof lines", number)
                axioms.append(parse_formula(stripped[len("axiom:") :]))
                continue
            m = _LINE.match(stripped)
            if m is None:
                raise ParseError(f"Expected 'n. <formula> ; <justification>', got '{stripped}'", number)
            if int(m.group(1)) != len(lines) + 1:
                raise ParseError(f"Line numbered {m.group(1)}, expected {len(lines) + 1}", number)
            body, sep, justification = m.group(2).rpartition(";")
            if not sep:
                raise ParseError("Missing ';' before the justification", number)
            lines.append(Line(parse_formula(body), parse_justification(justification, number)))
        except ParseError as e:
            if e.line == number:
                raise
            raise ParseError(f"In proof file: {e}", number) from e
    logger.debug(f"Parsed proof with {len(axioms)} axioms and {len(lines)} lines")
    return Proof(tuple(axioms), tuple(lines))


def format_proof(proof: Proof, comment: Optional[str] = None) -> str:
    out: List[str] = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.extend(f"axiom: {format_formula(a)}" for a in proof.axioms)
    width = len(str(len(proof.lines)))
    for i, line in enumerate(proof.lines, start=1):
        out.append(f"{i:>{width}}. {format_formula(line.formula)} ; {format_justification(line.justification)}")
    return "\n".join(out) + "\n"


def read_proof(path: Union[str, Path]) -> Proof:
    return parse_proof(Path(path).read_text(encoding="utf-8"))


def write_proof(proof: Proof, path: Union[str, Path], comment: Optional[str] = None) -> None:
    Path(path).write_text(format_proof(proof, comment), encoding="utf-8")

