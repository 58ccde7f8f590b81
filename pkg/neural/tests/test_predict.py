from neuralseg import PredictionRecord, repair_hallucinations, repair_rate


def test_hallucination_repaired_to_whole_word():
    record = PredictionRecord("redo", ("re", "da"))
    (repaired,) = repair_hallucinations([record])
    assert repaired.predicted_morphs == ("redo",)
    assert repaired.repaired is True
    assert repaired.repair_kind == "whole_word"


def test_valid_record_passes_through():
    record = PredictionRecord("undo", ("un", "do"))
    (out,) = repair_hallucinations([record])
    assert out is record
    assert out.repaired is False and out.repair_kind == "none"


def test_empty_decode_repaired():
    (out,) = repair_hallucinations([PredictionRecord("word", ())])
    assert out.predicted_morphs == ("word",)
    assert out.repaired


def test_repair_rate():
    records = [
        PredictionRecord("undo", ("un", "do")),
        PredictionRecord("redo", ("re", "da")),
    ]
    repaired = repair_hallucinations(records)
    assert repair_rate(repaired) == 0.5
    assert all(r.valid for r in repaired)
