import numpy as np
import pytest

from ginverse import generators as gen

CORPUS_SEED = 20260810


def build_corpus(count, max_n=6, max_k=3, seed=CORPUS_SEED):
    """Deterministic list of (matrix, n, k) with n in 2..max_n and known index k."""
    rng = np.random.default_rng(seed)
    corpus = []
    i = 0
    while len(corpus) < count:
        n = 2 + i % (max_n - 1)
        k = min(i % (max_k + 1), n - 1)
        corpus.append((gen.with_index(rng, n, k), n, k))
        i += 1
    return corpus


@pytest.fixture(scope="session")
def corpus():
    """Small mixed-index corpus for unit tests; the acceptance suite builds its own."""
    return build_corpus(36)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(97)
