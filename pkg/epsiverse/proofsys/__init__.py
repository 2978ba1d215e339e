from .analysis import ProofAnalysis, analyze, closure_of
from .checker import CheckResult, LineInfo, check_proof, verify
from .closure import Closure, lex_decreased, lex_key, position_key
from .derivations import (
    derive,
    eq_chain,
    fn_congruence,
    fresh_eigenvariable,
    generalize,
    generalize_antecedent,
    generalize_closed,
    instantiate_universal,
    pred_congruence,
    refl,
    sym_fact,
    symmetric,
    trans_fact,
    transitive,
    witness_existential,
)
from .fileformat import format_justification, format_proof, parse_justification, parse_proof, read_proof, write_proof
from .measures import CriticalTermInfo, MeasureReport, collect_terms
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
    ProofBuilder,
    Tautology,
    proof_from,
    references,
    reindex,
)
from .recognizers import (
    EQ_KINDS,
    EpsEqualityInfo,
    eq_axiom_kind,
    is_critical,
    recognize_critical,
    recognize_eps_equality,
)
from .system import (
    EC,
    EC_EPS,
    EC_EPS_EQ,
    EC_EPS_EQ1,
    EC_EPS_EQ_U,
    EC_EPS_PLUS_EQ,
    EC_EQ,
    PC,
    PC_EQ,
    SYSTEMS,
    EqualityMode,
    System,
    system_by_name,
)
from .tautology import is_tautology, recognize_tautology
from .transforms import combine_cases, deduction_transform, discharge, is_regular, regularize, slice_of

__all__ = [
    "Axiom",
    "CheckResult",
    "Closure",
    "Critical",
    "CriticalTermInfo",
    "EC",
    "EC_EPS",
    "EC_EPS_EQ",
    "EC_EPS_EQ1",
    "EC_EPS_EQ_U",
    "EC_EPS_PLUS_EQ",
    "EC_EQ",
    "EQ_KINDS",
    "EpsEquality",
    "EpsEqualityInfo",
    "EqAxiom",
    "EqualityMode",
    "ExistsMinus",
    "ExistsPlus",
    "ForallMinus",
    "ForallPlus",
    "Justification",
    "Line",
    "LineInfo",
    "MeasureReport",
    "ModusPonens",
    "PC",
    "PC_EQ",
    "Proof",
    "ProofAnalysis",
    "ProofBuilder",
    "SYSTEMS",
    "System",
    "Tautology",
    "analyze",
    "check_proof",
    "closure_of",
    "collect_terms",
    "combine_cases",
    "deduction_transform",
    "discharge",
    "derive",
    "eq_axiom_kind",
    "eq_chain",
    "fn_congruence",
    "format_justification",
    "format_proof",
    "fresh_eigenvariable",
    "generalize",
    "generalize_antecedent",
    "generalize_closed",
    "instantiate_universal",
    "is_critical",
    "is_regular",
    "is_tautology",
    "lex_decreased",
    "lex_key",
    "parse_justification",
    "parse_proof",
    "position_key",
    "pred_congruence",
    "proof_from",
    "read_proof",
    "recognize_critical",
    "recognize_eps_equality",
    "recognize_tautology",
    "references",
    "refl",
    "regularize",
    "reindex",
    "slice_of",
    "sym_fact",
    "symmetric",
    "system_by_name",
    "trans_fact",
    "transitive",
    "verify",
    "witness_existential",
]
