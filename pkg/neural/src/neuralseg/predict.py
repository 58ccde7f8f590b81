"""Segmentation prediction and hallucination repair.

The model can emit morph sequences that do not concatenate back to the
input word; such records are repaired to the unsplit word (always a valid
token) rather than searched for a nearest valid split, so bad morphs never
reach a vocabulary built from these predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import torch

from .model import SEP
from .train import Bundle, encode_source


@dataclass(frozen=True)
class PredictionRecord:
    word: str
    predicted_morphs: tuple[str, ...]
    repaired: bool = False
    repair_kind: str = "none"  # none | whole_word

    @property
    def valid(self) -> bool:
        return "".join(self.predicted_morphs) == self.word


def _decode_ids(bundle: Bundle, ids: list[int]) -> tuple[str, ...]:
    morphs: list[str] = []
    current: list[str] = []
    for tok in ids:
        if tok == SEP:
            if current:
                morphs.append("".join(current))
            current = []
        else:
            current.append(bundle.vocab.piece_of(tok))
    if current:
        morphs.append("".join(current))
    return tuple(m for m in morphs if m)


def predict_segmentations(
    bundle: Bundle, words: Sequence[str], batch_size: int = 256
) -> list[PredictionRecord]:
    """One record per word, in input order.

    Decoding budgets are per word (2*len+2 target tokens); budget
    exhaustion yields a truncated sequence whose concatenation check
    fails, which flags the record for repair downstream.
    """
    records: list[PredictionRecord] = [None] * len(words)  # type: ignore[list-item]
    # batch words of similar length together, then restore input order
    order = sorted(range(len(words)), key=lambda i: (len(words[i]), i))
    for start in range(0, len(order), batch_size):
        chunk = order[start : start + batch_size]
        src_rows = [encode_source(bundle.inventory, bundle.vocab, words[i]) for i in chunk]
        width = max(len(r) for r in src_rows)
        src = torch.full((len(chunk), width), 0, dtype=torch.long)
        for row_idx, row in enumerate(src_rows):
            src[row_idx, : len(row)] = torch.tensor(row, dtype=torch.long)
        budgets = torch.tensor([2 * len(words[i]) + 2 for i in chunk], dtype=torch.long)
        outputs = bundle.model.greedy_decode(src, budgets)
        for i, ids in zip(chunk, outputs):
            records[i] = PredictionRecord(word=words[i], predicted_morphs=_decode_ids(bundle, ids))
    return records


def repair_hallucinations(records: Sequence[PredictionRecord]) -> list[PredictionRecord]:
    """Replace invalid morph sequences by the whole word as a single morph."""
    out = []
    for record in records:
        if record.valid:
            out.append(record)
        else:
            out.append(
                replace(
                    record,
                    predicted_morphs=(record.word,),
                    repaired=True,
                    repair_kind="whole_word",
                )
            )
    return out


def repair_rate(records: Sequence[PredictionRecord]) -> float:
    return sum(1 for r in records if r.repaired) / len(records) if records else 0.0
