import pytest

from hetissue.corpus import write_corpus


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    """The standard 60-scene corpus rendered once per test session."""
    out = tmp_path_factory.mktemp("standard_corpus")
    write_corpus(out, master_seed=0)
    return out
