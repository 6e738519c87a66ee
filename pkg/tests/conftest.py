import pytest

from framecast.fixtures import reference_corpus
from framecast.seed import build_seed_ontology, build_seed_store


@pytest.fixture
def seed_ontology():
    return build_seed_ontology()


@pytest.fixture
def seed_store():
    return build_seed_store()


@pytest.fixture(scope="session")
def reference_store():
    return reference_corpus()
