import pytest

from neuralseg import fit_inventory


@pytest.fixture(scope="module")
def inventory(toy_pairs):
    return fit_inventory(sorted(toy_pairs), vocab_size=400)


def test_inventory_size_capped(inventory):
    assert len(inventory) <= 400


def test_all_characters_present(toy_pairs, inventory):
    chars = {ch for w in toy_pairs for ch in w}
    assert chars <= set(inventory.pieces())


def test_encode_round_trips(toy_pairs, inventory):
    for word in sorted(toy_pairs)[:300]:
        pieces = inventory.encode(word)
        assert "".join(pieces) == word
        assert all(pieces)


def test_encode_handles_unseen_characters(inventory):
    pieces = inventory.encode("qxq")
    assert "".join(pieces) == "qxq"


def test_vocab_size_below_charset_rejected(toy_pairs):
    with pytest.raises(ValueError):
        fit_inventory(sorted(toy_pairs), vocab_size=3)
