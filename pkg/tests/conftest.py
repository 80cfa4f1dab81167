import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ssengine.corpus import Corpus, Document, NormalizerConfig, tokenize


def make_corpus(texts, config=NormalizerConfig()):
    """Build a corpus directly from raw text strings."""
    docs = tuple(
        Document(i, f"test://{i}", t, tuple(tokenize(t, config)))
        for i, t in enumerate(texts)
    )
    return Corpus(docs, config)


def random_corpus(rng: random.Random, max_docs=40, vocab_size=12, max_len=30):
    """Small random corpus over a tiny vocabulary, so collisions are common."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    n_docs = rng.randint(0, max_docs)
    texts = [
        " ".join(rng.choice(vocab) for _ in range(rng.randint(1, max_len)))
        for _ in range(n_docs)
    ]
    return make_corpus(texts)


@pytest.fixture
def abc_corpus():
    return make_corpus(
        [
            "alpha beta gamma",
            "alpha beta",
            "beta gamma alpha",
            "delta",
            "alpha delta beta gamma",
        ]
    )
