"""The exported lexicon TSV is the contract with the tokenization toolkit:
it must parse cleanly on both sides of the fence."""

import neuralseg as ns


def _export(tmp_path, desk_result, toy_pairs):
    records = ns.repair_hallucinations(
        ns.predict_segmentations(desk_result.bundle, sorted(toy_pairs))
    )
    path = tmp_path / "lexicon.tsv"
    ns.write_lexicon_tsv({r.word: r.predicted_morphs for r in records}, path)
    return path, records


def test_export_reparses_with_own_reader(tmp_path, desk_result, toy_pairs):
    path, records = _export(tmp_path, desk_result, toy_pairs)
    entries, rejects = ns.read_gold_tsv(path)
    assert rejects == []
    assert len(entries) == len(records)


def test_export_ingested_by_primary_parse_gold(tmp_path, desk_result, toy_pairs):
    from morphtok import parse_gold

    path, records = _export(tmp_path, desk_result, toy_pairs)
    lexicon, rejects = parse_gold(path)
    assert rejects == []
    assert len(lexicon) == len(records)


def test_primary_consumes_lexicon_in_neural_mode(tmp_path, desk_result, toy_pairs):
    import morphtok as mt

    path, _ = _export(tmp_path, desk_result, toy_pairs)
    lexicon, _ = mt.parse_gold(path)
    provider = mt.SegmentationProvider("lexicon", lexicon=lexicon)
    counts = mt.WordCounts({w: 31 + (i % 50) for i, w in enumerate(sorted(toy_pairs))})
    vocab = mt.build_vocab(provider, counts, mt.VocabConfig())
    tokenizer = mt.Tokenizer(vocab, provider)
    word = sorted(toy_pairs)[0]
    tokens = mt.tokenize_word(tokenizer, word)
    assert mt.detokenize(tokenizer, tokens) == word
