"""Vocabulary construction from a segmentation provider and word counts.

Words above the frequency cutoff are segmented (or, in the keep-frequent
variant, kept whole above the second threshold) and their tokens
accumulated with word-initial tokens carrying the marker prefix.
Specials sit at the reserved low ids; remaining ids follow descending
corpus frequency with lexicographic tie-breaks.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .ingest import DEFAULT_PUNCTUATION, WordCounts
from .learner import canonical_json
from .segmenter import SegmentationProvider, segment

DEFAULT_SPECIALS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")
DEFAULT_MARKER = "Ġ"  # Ġ

VOCAB_FILE_VERSION = 1


@dataclass(frozen=True)
class VocabConfig:
    min_count_exclusive: int = 30
    keep_frequent_threshold: int | None = None  # 1700 reproduces the keep-frequent variant
    marker: str = DEFAULT_MARKER
    punctuation: str = DEFAULT_PUNCTUATION

    def __post_init__(self):
        if self.min_count_exclusive < 0:
            raise ValueError("min_count_exclusive must be >= 0")
        if self.keep_frequent_threshold is not None:
            if self.keep_frequent_threshold < 0:
                raise ValueError("keep_frequent_threshold must be >= 0")
            if self.keep_frequent_threshold <= self.min_count_exclusive:
                raise ValueError("keep_frequent_threshold must exceed min_count_exclusive")
        if not self.marker:
            raise ValueError("marker must be non-empty")


class Vocabulary:
    """token -> contiguous id, with per-token corpus frequencies."""

    __slots__ = ("tokens", "token_freq", "specials", "marker", "_id_to_token")

    def __init__(
        self,
        tokens: Mapping[str, int],
        token_freq: Mapping[str, int],
        specials: tuple = DEFAULT_SPECIALS,
        marker: str = DEFAULT_MARKER,
    ):
        self.tokens = dict(tokens)
        self.token_freq = dict(token_freq)
        self.specials = tuple(specials)
        self.marker = marker
        ids = sorted(self.tokens.values())
        if ids != list(range(len(self.tokens))):
            raise ValueError("token ids must be contiguous from 0")
        for i, special in enumerate(self.specials):
            if self.tokens.get(special) != i:
                raise ValueError(f"special {special!r} must have id {i}")
        self._id_to_token = [""] * len(self.tokens)
        for tok, i in self.tokens.items():
            self._id_to_token[i] = tok

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.tokens

    def id_of(self, token: str) -> int:
        return self.tokens[token]

    def token_of(self, token_id: int) -> str:
        return self._id_to_token[token_id]

    @property
    def unk_token(self) -> str:
        return self.specials[1]

    @property
    def unk_id(self) -> int:
        return self.tokens[self.unk_token]


def build_vocab(
    provider: SegmentationProvider,
    counts: WordCounts,
    cfg: VocabConfig = VocabConfig(),
) -> Vocabulary:
    """Build a vocabulary by segmenting every retained word.

    Retained words (count > ``min_count_exclusive``) are emitted as a
    single ``marker+word`` token when the keep-frequent threshold applies
    (count >= threshold, inclusive), and otherwise as provider morphs with
    the first morph marker-prefixed.  Single-character punctuation words
    bypass segmentation and stay unmarked; the configured punctuation set
    is always present.  Ids: specials first, then descending frequency.
    """
    if not len(counts):
        raise ValueError("empty counts")
    marker = cfg.marker
    punct = set(cfg.punctuation)
    token_freq: dict[str, int] = {}

    def emit(token: str, count: int) -> None:
        token_freq[token] = token_freq.get(token, 0) + count

    for word, count in sorted(counts.items()):
        if count <= cfg.min_count_exclusive:
            continue
        if len(word) == 1 and word in punct:
            emit(word, count)
        elif cfg.keep_frequent_threshold is not None and count >= cfg.keep_frequent_threshold:
            emit(marker + word, count)
        else:
            morphs = segment(provider, word)
            emit(marker + morphs[0], count)
            for morph in morphs[1:]:
                emit(morph, count)
    for ch in cfg.punctuation:
        token_freq.setdefault(ch, 0)

    collisions = [t for t in DEFAULT_SPECIALS if t in token_freq]
    if collisions:
        raise ValueError(f"corpus tokens collide with specials: {collisions}")
    tokens: dict[str, int] = {s: i for i, s in enumerate(DEFAULT_SPECIALS)}
    for token in sorted(token_freq, key=lambda t: (-token_freq[t], t)):
        tokens[token] = len(tokens)
    return Vocabulary(tokens, token_freq, DEFAULT_SPECIALS, marker)


@dataclass(frozen=True)
class DiffReport:
    only_a: int
    only_b: int
    shared: int
    infrequent_word_tokens_a: int


def vocab_diff(a: Vocabulary, b: Vocabulary, counts: WordCounts, word_threshold: int) -> DiffReport:
    """Set differences of two vocabularies over token strings.

    ``infrequent_word_tokens_a`` counts tokens only in A of the form
    marker+w where w is a corpus word with count below ``word_threshold``.
    """
    if a.marker != b.marker:
        raise ValueError(f"marker mismatch: {a.marker!r} vs {b.marker!r}")
    a_tokens = set(a.tokens)
    b_tokens = set(b.tokens)
    only_a = a_tokens - b_tokens
    marker = a.marker
    infrequent = 0
    for token in only_a:
        if token.startswith(marker):
            word = token[len(marker):]
            if word in counts and counts[word] < word_threshold:
                infrequent += 1
    return DiffReport(
        only_a=len(only_a),
        only_b=len(b_tokens - a_tokens),
        shared=len(a_tokens & b_tokens),
        infrequent_word_tokens_a=infrequent,
    )


def save_vocab(vocabulary: Vocabulary, path: str | Path | io.TextIOBase) -> None:
    entries = [
        {"token": tok, "id": i, "freq": vocabulary.token_freq.get(tok, 0)}
        for tok, i in sorted(vocabulary.tokens.items(), key=lambda kv: kv[1])
    ]
    payload = {
        "version": VOCAB_FILE_VERSION,
        "marker": vocabulary.marker,
        "specials": list(vocabulary.specials),
        "entries": entries,
    }
    text = canonical_json(payload)
    if isinstance(path, (str, Path)):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        path.write(text)


def load_vocab(path: str | Path | io.TextIOBase) -> Vocabulary:
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    else:
        payload = json.load(path)
    if payload.get("version") != VOCAB_FILE_VERSION:
        raise ValueError(f"unsupported vocabulary file version {payload.get('version')!r}")
    specials = tuple(payload["specials"])
    tokens = {e["token"]: e["id"] for e in payload["entries"]}
    token_freq = {e["token"]: e["freq"] for e in payload["entries"] if e["token"] not in specials}
    return Vocabulary(tokens, token_freq, specials, payload["marker"])
