import random

import pytest

import neuralseg as ns

SUFFIXES = ["", "ing", "ed", "s", "er", "est", "ly", "ness", "ment", "ful"]


def make_grammar(n_stems=200, seed=13):
    """Stem x suffix toy grammar; one suffix is null so stems occur bare."""
    rng = random.Random(seed)
    cons, vow = "bcdfgklmnprstvz", "aeiou"

    def mkstem():
        n = rng.choice([2, 2, 3])
        return "".join(rng.choice(cons) + rng.choice(vow) for _ in range(n)) + rng.choice(cons)

    stems = []
    while len(stems) < n_stems:
        s = mkstem()
        if s not in stems and not any(x and s.endswith(x) for x in SUFFIXES):
            stems.append(s)
    pairs = {}
    for s in stems:
        for suf in SUFFIXES:
            pairs[s + suf] = (s, suf) if suf else (s,)
    return pairs


@pytest.fixture(scope="session")
def toy_pairs():
    return make_grammar()


FAST_CFG = ns.NeuralConfig(
    layers=2,
    attention_heads=4,
    embedding_size=64,
    feedforward_dim=128,
    dropout=0.1,
    epochs=30,
    subword_vocab=400,
    seed=0,
)


@pytest.fixture(scope="session")
def desk_result(toy_pairs):
    """One full desk-scale training shared by the slow tests (timed)."""
    import time

    start = time.perf_counter()
    result = ns.train_seq2seq(toy_pairs, ns.NeuralConfig(seed=0))
    result.log["train_seconds"] = time.perf_counter() - start
    return result
