import io

from neuralseg import read_gold_tsv, read_word_list, write_lexicon_tsv


def test_read_gold_basic():
    entries, rejects = read_gold_tsv(io.StringIO("undo\tun do\ncat\tcat\n"), "")
    assert entries == {"undo": ("un", "do"), "cat": ("cat",)}
    assert rejects == []


def test_read_gold_marker_style():
    entries, _ = read_gold_tsv(io.StringIO("walking\twalk @@ing\n"))
    assert entries["walking"] == ("walk", "ing")


def test_read_gold_rejects_bad_concatenation():
    entries, rejects = read_gold_tsv(io.StringIO("redo\tre da\n"))
    assert entries == {}
    assert len(rejects) == 1


def test_write_lexicon_round_trip():
    entries = {"undo": ("un", "do"), "cat": ("cat",)}
    buf = io.StringIO()
    write_lexicon_tsv(entries, buf)
    assert buf.getvalue() == "cat\tcat\nundo\tun do\n"
    again, rejects = read_gold_tsv(io.StringIO(buf.getvalue()))
    assert again == entries and rejects == []


def test_read_word_list_takes_first_column():
    words = read_word_list(io.StringIO("alpha\t5\nbeta\n\ngamma\t1\t2\n"))
    assert words == ["alpha", "beta", "gamma"]
