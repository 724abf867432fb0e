import pytest

from quotmod import equivalence as eq


@pytest.fixture(scope="session")
def corpus():
    return eq.builtin_corpus()


@pytest.fixture(scope="session")
def corpus_kernels(corpus):
    """Realized (gauged) kernel series for every corpus member."""
    from quotmod import kernels as ke

    return {name: ke.realize_kernel(spec.kernel) for name, spec in corpus.items()}
