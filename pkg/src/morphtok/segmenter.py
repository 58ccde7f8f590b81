"""Inference-time word segmentation.

``viterbi_segment`` finds the cheapest morph sequence for a word under a
trained model: known morphs cost their corpus bits, unknown substrings pay
a per-character penalty, and the dynamic program runs over the candidate
lattice via the kernel backend.  ``segment`` routes between a model and an
external segmentation lexicon.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ._kernels import viterbi_solve
from .annotations import SegmentationLexicon
from .learner import MorfessorModel

DEFAULT_MAX_MORPH_LEN = 30

_PENALTY_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def default_oov_penalty(model: MorfessorModel) -> float:
    """Bits per character for unknown substrings.

    One bit more than the per-character rate of the most expensive known
    morph, so no unknown substring can undercut a known morph of the same
    length.
    """
    cached = _PENALTY_CACHE.get(model)
    if cached is not None:
        return cached
    total = model.total_morph_tokens
    worst = max(
        -math.log2(c / total) / len(m) for m, c in model.morph_counts.items()
    )
    penalty = worst + 1.0
    _PENALTY_CACHE[model] = penalty
    return penalty


def viterbi_segment(
    model: MorfessorModel,
    word: str,
    max_morph_len: int = DEFAULT_MAX_MORPH_LEN,
    oov_char_penalty: float | None = None,
) -> tuple[list[str], float]:
    """Minimum-cost segmentation of ``word`` and its cost in bits.

    Ties break to fewer morphs, then to the longest first morph (applied
    recursively along the word).  Substrings longer than ``max_morph_len``
    are not considered.
    """
    if not word:
        raise ValueError("cannot segment an empty word")
    if max_morph_len < 1:
        raise ValueError(f"max_morph_len must be >= 1, got {max_morph_len}")
    if oov_char_penalty is None:
        oov_char_penalty = default_oov_penalty(model)
    if not oov_char_penalty > 0:
        raise ValueError(f"oov_char_penalty must be > 0, got {oov_char_penalty}")
    n = len(word)
    cap = min(max_morph_len, n)
    total = model.total_morph_tokens
    counts = model.morph_counts
    cand = np.full((n, cap), np.inf, dtype=np.float64)
    for i in range(n):
        top = min(cap, n - i)
        for l in range(top):
            piece = word[i : i + l + 1]
            c = counts.get(piece)
            if c is not None:
                cand[i, l] = -math.log2(c / total)
            else:
                cand[i, l] = (l + 1) * oov_char_penalty
    cost, _count, bp = viterbi_solve(cand, n)
    morphs = []
    i = 0
    while i < n:
        j = int(bp[i])
        morphs.append(word[i:j])
        i = j
    return morphs, float(cost[0])


@dataclass
class SegmentationProvider:
    """Routing layer over a model and/or an external lexicon.

    ``kind`` is one of ``model``, ``lexicon``, ``lexicon_then_model``.
    The lexicon may be a raw mapping; entries are re-verified at lookup
    time, and entries whose morphs do not concatenate to the word are
    treated as absent (``corrupt_entries`` counts them, the only mutable
    state on a provider).
    """

    kind: str
    model: MorfessorModel | None = None
    lexicon: SegmentationLexicon | Mapping[str, Sequence[str]] | None = None
    oov_char_penalty: float | None = None
    max_morph_len: int = DEFAULT_MAX_MORPH_LEN
    corrupt_entries: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in ("model", "lexicon", "lexicon_then_model"):
            raise ValueError(f"unknown provider kind {self.kind!r}")
        if self.kind in ("model", "lexicon_then_model") and self.model is None:
            raise ValueError(f"kind={self.kind!r} requires a model")
        if self.kind in ("lexicon", "lexicon_then_model") and self.lexicon is None:
            raise ValueError(f"kind={self.kind!r} requires a lexicon")
        if self.oov_char_penalty is not None and not self.oov_char_penalty > 0:
            raise ValueError("oov_char_penalty must be > 0")

    def _lexicon_entry(self, word: str) -> list[str] | None:
        if isinstance(self.lexicon, SegmentationLexicon):
            if word in self.lexicon:
                return list(self.lexicon[word])
            return None
        morphs = self.lexicon.get(word)
        if morphs is None:
            return None
        morphs = list(morphs)
        if not morphs or any(not m for m in morphs) or "".join(morphs) != word:
            self.corrupt_entries += 1
            return None
        return morphs


def segment(provider: SegmentationProvider, word: str) -> list[str]:
    """Segment a word through the provider's routing rules."""
    if not word:
        raise ValueError("cannot segment an empty word")
    if provider.kind in ("lexicon", "lexicon_then_model"):
        entry = provider._lexicon_entry(word)
        if entry is not None:
            return entry
        if provider.kind == "lexicon":
            raise LookupError(f"word {word!r} not in segmentation lexicon")
    morphs, _cost = viterbi_segment(
        provider.model, word, provider.max_morph_len, provider.oov_char_penalty
    )
    return morphs
