import pytest

from flatcauchy.corpus import CorpusConfig, build_corpus, default_corpus


@pytest.fixture(scope="session")
def corpus():
    """The default corpus, built once per session (about ten seconds)."""
    return default_corpus()


@pytest.fixture(scope="session")
def small_corpus():
    return build_corpus(CorpusConfig(presheaf_budget=2, functor_budget=4))


@pytest.fixture(scope="session")
def cats(small_corpus):
    return {C.name: C for C in small_corpus.categories}
