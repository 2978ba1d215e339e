import sys

import pytest

from epsiverse.config import (
    EliminationConfig,
    ResourceLimits,
    applied,
    create_config_from_env,
    current_limits,
    current_tautology_config,
)
from epsiverse.kernel import Fn, Var

ENV = ["EPSIVERSE_MAX_LINES", "EPSIVERSE_MAX_NODES", "EPSIVERSE_TABLE_ATOMS", "EPSIVERSE_SEARCH_STEPS", "EPSIVERSE_RESIDUALS"]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV:
        monkeypatch.delenv(name, raising=False)


def test_defaults():
    config = create_config_from_env()
    assert config == EliminationConfig()
    assert config.residual_factory(3) is Var("_r3")


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("EPSIVERSE_MAX_LINES", "100")
    monkeypatch.setenv("EPSIVERSE_MAX_NODES", "200")
    monkeypatch.setenv("EPSIVERSE_TABLE_ATOMS", "8")
    monkeypatch.setenv("EPSIVERSE_SEARCH_STEPS", "1000")
    monkeypatch.setenv("EPSIVERSE_RESIDUALS", "Constants")
    config = create_config_from_env()
    assert config.limits == ResourceLimits(max_lines=100, max_nodes=200)
    assert config.tautology.max_table_atoms == 8
    assert config.tautology.max_search_steps == 1000
    assert config.residuals == "constants"
    assert config.residual_factory(0) is Fn("_c0", ())


@pytest.mark.parametrize(
    "name, value",
    [
        ("EPSIVERSE_MAX_LINES", "many"),
        ("EPSIVERSE_MAX_NODES", "0"),
        ("EPSIVERSE_TABLE_ATOMS", "-3"),
        ("EPSIVERSE_RESIDUALS", "terms"),
    ],
)
def test_malformed_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError):
        create_config_from_env()


def test_applied_scopes_the_limits():
    config = EliminationConfig(limits=ResourceLimits(max_lines=5))
    config.tautology.max_table_atoms = 3
    with applied(config):
        assert current_limits().max_lines == 5
        assert current_tautology_config().max_table_atoms == 3
    assert current_limits().max_lines == ResourceLimits().max_lines
    assert current_tautology_config().max_table_atoms == 24


def test_applied_raises_the_recursion_limit():
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(2000)
    try:
        with applied(EliminationConfig()):
            assert sys.getrecursionlimit() == ResourceLimits().recursion_limit
    finally:
        sys.setrecursionlimit(max(old, ResourceLimits().recursion_limit))
