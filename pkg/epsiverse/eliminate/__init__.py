from .bounds import closure_sizes
from .cases import Case, Split, plan_cases, split_on, term_lines
from .driver import (
    MODES,
    Eliminator,
    HerbrandResult,
    closure_eliminate_rank,
    eliminate_rank_critical,
    extended_first_epsilon_theorem,
    first_epsilon_theorem,
    normalize_to_critical_rank,
    reduce_rank,
)
from .extended import (
    HerbrandState,
    SymbolRegistry,
    default_matrix,
    eliminate_eq_only_rank,
    ext_eliminate_step,
    function_symbol_substitution,
    replace_residuals,
)
from .first import eliminate_no_eq, eliminate_step, eliminate_with_eq, is_maximal
from .generators import GeneratedProof, ProofGenerator, corpus
from .hyperexp import Hyperexp, hyperexp, within
from .identity import (
    build_identity_proof,
    build_identity_proof_positional,
    identity_chain_holds,
    subst_ca,
    subst_epseq,
)
from .oracle import CongruenceClosureOracle, HerbrandOracle, OracleResult
from .positional import closure_eliminate_step, is_closure_maximal
from .trace import BoundCheck, EliminationTrace, TraceStep

__all__ = [
    "BoundCheck",
    "Case",
    "CongruenceClosureOracle",
    "Eliminator",
    "EliminationTrace",
    "GeneratedProof",
    "HerbrandOracle",
    "HerbrandResult",
    "HerbrandState",
    "Hyperexp",
    "MODES",
    "OracleResult",
    "ProofGenerator",
    "Split",
    "SymbolRegistry",
    "TraceStep",
    "build_identity_proof",
    "build_identity_proof_positional",
    "closure_eliminate_rank",
    "closure_eliminate_step",
    "closure_sizes",
    "corpus",
    "default_matrix",
    "eliminate_eq_only_rank",
    "eliminate_no_eq",
    "eliminate_rank_critical",
    "eliminate_step",
    "eliminate_with_eq",
    "ext_eliminate_step",
    "extended_first_epsilon_theorem",
    "first_epsilon_theorem",
    "function_symbol_substitution",
    "hyperexp",
    "identity_chain_holds",
    "is_closure_maximal",
    "is_maximal",
    "normalize_to_critical_rank",
    "plan_cases",
    "reduce_rank",
    "replace_residuals",
    "split_on",
    "subst_ca",
    "subst_epseq",
    "term_lines",
    "within",
]
