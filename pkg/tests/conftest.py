import pytest

import morphtok as mt
from synthgrammar import make_grammar


@pytest.fixture(scope="session")
def grammar():
    """(counts, gold) for the default 40-stem x 10-suffix corpus."""
    return make_grammar()


@pytest.fixture(scope="session")
def grammar_model(grammar):
    counts, _gold = grammar
    weighted = mt.transform_counts(counts, mt.FrequencyTransform("token"))
    return mt.train(weighted, params=mt.MorfessorParams(seed=0))
