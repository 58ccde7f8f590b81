"""Unigram-style subword inventory used to encode words and morphs.

Pieces are the training words' frequent substrings (scored by
frequency times extra length), always including every single character
so any string stays encodable.  Words are encoded by Viterbi search for
the most probable piece sequence under the piece unigram distribution.
This is a desk-scale stand-in for a full EM-trained unigram model: same
encoding rule, frequency-based piece scores instead of EM re-estimation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

MAX_PIECE_LEN = 10


@dataclass
class SubwordInventory:
    piece_logp: dict[str, float]
    max_piece_len: int = MAX_PIECE_LEN

    def __len__(self) -> int:
        return len(self.piece_logp)

    def pieces(self) -> list[str]:
        return sorted(self.piece_logp)

    def encode(self, word: str) -> list[str]:
        """Most probable piece sequence covering the word.

        Characters outside the inventory become their own pieces with a
        floor probability, so encoding never fails.
        """
        n = len(word)
        floor = min(self.piece_logp.values()) - math.log(100.0)
        best = [0.0] + [-math.inf] * n
        back = [0] * (n + 1)
        for j in range(1, n + 1):
            for i in range(max(0, j - self.max_piece_len), j):
                piece = word[i:j]
                logp = self.piece_logp.get(piece)
                if logp is None:
                    if j - i > 1:
                        continue
                    logp = floor
                score = best[i] + logp
                if score > best[j]:
                    best[j] = score
                    back[j] = i
        out = []
        j = n
        while j > 0:
            i = back[j]
            out.append(word[i:j])
            j = i
        out.reverse()
        return out


def fit_inventory(
    words: Iterable[str],
    vocab_size: int = 1000,
    max_piece_len: int = MAX_PIECE_LEN,
) -> SubwordInventory:
    """Select up to ``vocab_size`` pieces from the words' substrings."""
    counts: dict[str, int] = {}
    chars: set[str] = set()
    for word in words:
        chars.update(word)
        n = len(word)
        for i in range(n):
            for j in range(i + 1, min(n, i + max_piece_len) + 1):
                piece = word[i:j]
                counts[piece] = counts.get(piece, 0) + 1
    if not chars:
        raise ValueError("cannot fit an inventory on no words")
    if vocab_size < len(chars):
        raise ValueError(f"vocab_size {vocab_size} below character count {len(chars)}")
    # substrings ranked by how much text they cover beyond single chars
    scored = sorted(
        (p for p in counts if len(p) > 1),
        key=lambda p: (-(counts[p] * (len(p) - 1)), p),
    )
    chosen = set(chars)
    for piece in scored:
        if len(chosen) >= vocab_size:
            break
        chosen.add(piece)
    total = math.fsum(counts[p] for p in chosen)
    logp = {p: math.log(counts[p] / total) for p in sorted(chosen)}
    return SubwordInventory(piece_logp=logp, max_piece_len=max_piece_len)
