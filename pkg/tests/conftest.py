import pytest

from veribv.beauville import make_standard_triple
from veribv.groups import make_generators

_TRIPLES = {}


def standard_triple(k):
    """Shared enumerated structures; levels up to 5 are cheap to keep."""
    if k not in _TRIPLES:
        _TRIPLES[k] = make_standard_triple(k)
    return _TRIPLES[k]


@pytest.fixture(scope="session")
def triple3():
    return standard_triple(3)


@pytest.fixture(scope="session")
def triple4():
    return standard_triple(4)


@pytest.fixture(scope="session")
def triple5():
    return standard_triple(5)


@pytest.fixture(scope="session")
def gens3():
    return make_generators(3)
