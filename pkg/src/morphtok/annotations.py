"""Gold segmentation ingestion, annotation sampling and boundary scoring.

Lexicon files are TSV: ``word<TAB>morph1 morph2 ...`` with space-separated
morphs.  Ingestion also accepts marker-style files where continuation
morphs carry a separator such as ``@@`` (stripped before validation).

Annotation subsets are drawn without replacement, proportionally to
length-times-frequency weights; successive draws renormalize over the
remaining candidates.  Randomness comes from numpy's PCG64 generator
seeded explicitly, so a (weights, k, seed) triple always produces the
same sample.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._kernels import tree_sum, weighted_draw
from .ingest import WordCounts


class SegmentationLexicon:
    """word -> ordered morph sequence; morphs always concatenate to the word."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, Sequence[str]]):
        checked: dict[str, tuple[str, ...]] = {}
        for word, morphs in entries.items():
            morphs = tuple(morphs)
            if not morphs or any(not m for m in morphs):
                raise ValueError(f"empty morph list or empty morph for {word!r}")
            if "".join(morphs) != word:
                raise ValueError(f"morphs {morphs!r} do not concatenate to {word!r}")
            checked[word] = morphs
        self._entries = checked

    @property
    def entries(self) -> Mapping[str, tuple[str, ...]]:
        return self._entries

    def __getitem__(self, word: str) -> tuple[str, ...]:
        return self._entries[word]

    def __contains__(self, word: str) -> bool:
        return word in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SegmentationLexicon) and self._entries == other._entries

    def items(self):
        return self._entries.items()

    def keys(self):
        return self._entries.keys()


@dataclass
class RejectedLine:
    lineno: int
    text: str
    reason: str


def parse_gold(
    path: str | Path | io.TextIOBase,
    morph_separator: str = "@@",
) -> tuple[SegmentationLexicon, list[RejectedLine]]:
    """Parse a gold segmentation TSV into a lexicon plus a rejects list.

    Each line needs at least two tab-separated columns: the word and its
    segmentation.  The segmentation is whitespace-split into morphs and
    ``morph_separator`` occurrences are stripped from each morph.  Lines
    whose morphs do not concatenate to the word, or with too few columns,
    are collected as rejects.  More than 50% rejected lines raises (the
    separator is probably wrong).
    """
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            return parse_gold(handle, morph_separator)

    entries: dict[str, tuple[str, ...]] = {}
    rejects: list[RejectedLine] = []
    n_lines = 0
    for lineno, raw in enumerate(path, 1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        n_lines += 1
        cols = line.split("\t")
        if len(cols) < 2:
            rejects.append(RejectedLine(lineno, line, "expected >= 2 tab-separated columns"))
            continue
        word, segmentation = cols[0], cols[1]
        pieces = segmentation.split()
        if morph_separator:
            pieces = [p.replace(morph_separator, "") for p in pieces]
        morphs = tuple(p for p in pieces if p)
        if not morphs:
            rejects.append(RejectedLine(lineno, line, "no morphs after separator stripping"))
            continue
        if "".join(morphs) != word:
            rejects.append(
                RejectedLine(lineno, line, f"morphs concatenate to {''.join(morphs)!r}, not {word!r}")
            )
            continue
        entries[word] = morphs
    if n_lines and len(rejects) * 2 > n_lines:
        raise ValueError(
            f"{len(rejects)} of {n_lines} lines rejected; wrong --morph-sep? "
            f"first reject: line {rejects[0].lineno}: {rejects[0].reason}"
        )
    return SegmentationLexicon(entries), rejects


def write_lexicon_tsv(lexicon: SegmentationLexicon, handle: io.TextIOBase) -> None:
    """Canonical lexicon TSV: word<TAB>space-separated morphs, sorted by word."""
    for word in sorted(lexicon.keys()):
        handle.write(f"{word}\t{' '.join(lexicon[word])}\n")


@dataclass
class AnnotationSampler:
    """Length-and-frequency-proportional sampling weights over candidate words."""

    weights: dict[str, float]
    k: int = 3000
    seed: int = 0

    def __post_init__(self):
        if not self.weights:
            raise ValueError("sampler needs a non-empty candidate set")
        if any(p <= 0 for p in self.weights.values()):
            raise ValueError("all sampling weights must be positive")
        total = math.fsum(self.weights.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"sampling weights must sum to 1, got {total!r}")


def sampling_weights(counts: WordCounts, candidates: Iterable[str]) -> AnnotationSampler:
    """p_w proportional to len(w) * count(w), normalized over the candidates."""
    words = sorted(set(candidates))
    if not words:
        raise ValueError("empty candidate set")
    missing = [w for w in words if w not in counts]
    if missing:
        raise ValueError(f"{len(missing)} candidates have no count (e.g. {missing[0]!r})")
    raw = np.array([len(w) * counts[w] for w in words], dtype=np.float64)
    total = tree_sum(raw)
    return AnnotationSampler(weights={w: float(r / total) for w, r in zip(words, raw)})


def sample_annotations(
    sampler: AnnotationSampler,
    gold: SegmentationLexicon,
    k: int,
    seed: int,
) -> SegmentationLexicon:
    """Draw exactly k distinct annotated words, weight-proportionally.

    Candidates are the words common to the sampler and the gold lexicon.
    Draws are without replacement (renormalizing after each draw) and
    deterministic in the seed.
    """
    candidates = sorted(w for w in sampler.weights if w in gold)
    if k > len(candidates):
        raise ValueError(f"k={k} exceeds candidate count {len(candidates)}")
    if k == len(candidates):
        return SegmentationLexicon({w: gold[w] for w in candidates})
    weights = np.array([sampler.weights[w] for w in candidates], dtype=np.float64)
    uniforms = np.random.default_rng(seed).random(k)
    chosen = weighted_draw(weights, uniforms)
    return SegmentationLexicon({candidates[i]: gold[candidates[i]] for i in sorted(chosen)})


def boundary_set(morphs: Sequence[str]) -> frozenset:
    """Internal split positions of a segmentation (indices 1..len(word)-1)."""
    positions = []
    pos = 0
    for m in morphs[:-1]:
        pos += len(m)
        positions.append(pos)
    return frozenset(positions)


@dataclass
class SegScores:
    boundary_precision: float
    boundary_recall: float
    boundary_f1: float
    exact_match_rate: float
    evaluated: int = 0
    gold_only: int = 0
    pred_only: int = 0


def score_segmentation(pred: SegmentationLexicon, gold: SegmentationLexicon) -> SegScores:
    """Micro-averaged boundary precision/recall/F1 over the shared words.

    Words present in only one lexicon do not enter the micro-average; their
    counts are reported separately on the result.
    """
    shared = sorted(w for w in pred.keys() if w in gold)
    if not shared:
        raise ValueError("pred and gold share no words")
    tp = pred_total = gold_total = 0
    exact = 0
    for w in shared:
        pb = boundary_set(pred[w])
        gb = boundary_set(gold[w])
        tp += len(pb & gb)
        pred_total += len(pb)
        gold_total += len(gb)
        if pred[w] == gold[w]:
            exact += 1
    # a side with no boundaries at all is vacuously perfect
    precision = tp / pred_total if pred_total else 1.0
    recall = tp / gold_total if gold_total else 1.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return SegScores(
        boundary_precision=precision,
        boundary_recall=recall,
        boundary_f1=f1,
        exact_match_rate=exact / len(shared),
        evaluated=len(shared),
        gold_only=sum(1 for w in gold.keys() if w not in pred),
        pred_only=sum(1 for w in pred.keys() if w not in gold),
    )
