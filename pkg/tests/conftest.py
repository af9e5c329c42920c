import pytest
from hypothesis import HealthCheck, settings

from kgraph.corpus import NAMED, acceptance_corpus

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

CORPUS = acceptance_corpus()
ACYCLIC = {name: g for name, g in CORPUS.items() if g.is_acyclic()}


@pytest.fixture
def g1():
    return NAMED["g1"]()


@pytest.fixture
def g2():
    return NAMED["g2"]()


@pytest.fixture
def g3():
    return NAMED["g3"]()


@pytest.fixture
def g4():
    return NAMED["g4"]()


@pytest.fixture
def square():
    return NAMED["square"]()
