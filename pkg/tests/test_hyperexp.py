import pytest

from epsiverse.eliminate import Hyperexp, hyperexp, within
from epsiverse.errors import PreconditionError


@pytest.mark.parametrize(
    "k, n, m, value",
    [
        (2, 0, 7, 7),
        (2, 1, 3, 8),
        (2, 2, 2, 16),
        (2, 3, 2, 65536),
        (3, 2, 1, 27),
        (1, 4, 9, 1),
    ],
)
def test_small_values_are_exact(k, n, m, value):
    h = hyperexp(k, n, m)
    assert h.exact == value
    assert int(h) == value
    assert h == value


def test_large_values_become_towers():
    big = hyperexp(2, 4, 2)
    assert big.exact is None
    assert str(big) == "2_1^65536"
    with pytest.raises(OverflowError):
        int(big)
    assert hyperexp(2, 5, 1) == big


def test_towers_compare_exactly():
    assert hyperexp(2, 3, 3) == 2**256
    assert hyperexp(2, 4, 2) > hyperexp(2, 3, 3)
    assert hyperexp(2, 5, 2) > hyperexp(2, 4, 2) * 1000
    assert hyperexp(2, 4, 2) < hyperexp(2, 4, 2) * 2
    assert hyperexp(2, 4, 2) > 10**1000


def test_multiplication():
    assert hyperexp(2, 2, 2) * 3 == 48
    assert 3 * hyperexp(2, 2, 2) == 48
    assert str(hyperexp(2, 4, 2) * 3) == "3*2_1^65536"


def test_within():
    assert within(5, 5)
    assert not within(6, 5)
    assert within(10**100, hyperexp(2, 4, 2))
    assert not within(17, hyperexp(2, 2, 2))


@pytest.mark.parametrize("args", [(-1, 1, 1), (2, -1, 1), (2, 1, -1), (0, 1, 1)])
def test_invalid_arguments(args):
    with pytest.raises(PreconditionError):
        hyperexp(*args)


def test_hyperexp_type():
    assert isinstance(hyperexp(2, 1, 1), Hyperexp)
    assert hyperexp(0, 0, 4) == 4
