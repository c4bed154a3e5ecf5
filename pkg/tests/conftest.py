import pytest

from notecorpus.corpus.store import CorpusStore
from notecorpus.synth import seed_demo_corpus


@pytest.fixture(scope="session")
def demo_store(tmp_path_factory) -> CorpusStore:
    """One seeded demo corpus shared by read-only tests."""
    corpus_dir = tmp_path_factory.mktemp("demo-corpus")
    store, report = seed_demo_corpus(corpus_dir, seed=7)
    assert not report.failed
    return store
