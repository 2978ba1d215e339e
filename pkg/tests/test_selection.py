from pathlib import Path

import pytest

from epsiverse.eliminate import ProofGenerator
from epsiverse.errors import PreconditionError
from epsiverse.kernel import parse_term
from epsiverse.proofsys import EC_EPS, EqualityMode, analyze, read_proof
from epsiverse.selection import (
    ClosureMaximalSelection,
    MaximalTermSelection,
    SelectionContext,
    maximal_candidates,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def drinker_analysis():
    return analyze(EC_EPS, read_proof(CORPUS / "drinker.eproof"))


def test_maximal_selection_picks_the_critical_term():
    analysis = drinker_analysis()
    strategy = MaximalTermSelection()
    chosen = strategy.apply(SelectionContext(step=0, analysis=analysis))
    assert chosen.term is parse_term("eps x. A(x) -> A(eps y. ~A(y))")
    assert chosen.tags == {"rank": 1, "degree": 2}
    assert chosen.greatest_in_matrix is None


def test_candidates_have_the_greatest_degree():
    analysis = drinker_analysis()
    candidates = maximal_candidates(SelectionContext(step=0, analysis=analysis, rank=1))
    assert [info.degree for info in candidates] == [2]


def test_empty_rank_is_rejected():
    with pytest.raises(PreconditionError):
        MaximalTermSelection().apply(SelectionContext(step=0, analysis=drinker_analysis(), rank=3))


def test_strategy_state_round_trips():
    strategy = MaximalTermSelection()
    strategy.result(0, 4)
    strategy.result(1, None)
    restored = MaximalTermSelection()
    restored.deserialize(strategy.serialize())
    assert restored.history == [(0, 4), (1, None)]


@pytest.mark.parametrize("seed", range(5))
def test_closure_selection_prefers_greatest_instances(seed):
    g = ProofGenerator(seed, mode=EqualityMode.POSITIONAL).generate("herbrand")
    analysis = analyze(g.system, g.proof)
    strategy = ClosureMaximalSelection()
    chosen = strategy.apply(SelectionContext(step=0, analysis=analysis))
    assert chosen.term in analysis.terms
    assert analysis.terms[chosen.term].rank == analysis.report.rank
    assert isinstance(chosen.greatest_in_matrix, bool)
    assert strategy.fallbacks == (0 if chosen.greatest_in_matrix else 1)

    restored = ClosureMaximalSelection()
    restored.deserialize(strategy.serialize())
    assert restored.fallbacks == strategy.fallbacks
