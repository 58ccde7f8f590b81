"""Vocabulary diagnostics: Shannon/Renyi entropy and decade histograms.

All entropies are base 2 (bits) over the token occurrence-frequency
distribution; a type-weighted variant (each retained word counted once)
is available when recomputing frequencies.  Reductions run through the
fixed-tree pairwise sum so reports are reproducible bit for bit.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from ._kernels import bucket_counts, tree_sum
from .ingest import WordCounts
from .learner import canonical_json
from .tokenizer import Tokenizer, tokenize_word
from .vocab import Vocabulary

REPORT_FILE_VERSION = 1

# 10^k is exact in float64 up to k = 22
_POW10 = np.array([float(10**k) for k in range(23)], dtype=np.float64)


def _positive_array(freqs) -> np.ndarray:
    """Positive frequencies as float64, in sorted-key order for mappings."""
    if isinstance(freqs, Mapping):
        values = [float(freqs[k]) for k in sorted(freqs)]
    else:
        values = [float(v) for v in freqs]
    if any(v < 0 for v in values):
        raise ValueError("frequencies must be >= 0")
    arr = np.array([v for v in values if v > 0.0], dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no positive frequencies")
    return arr


def shannon_entropy(freqs) -> float:
    """H = -sum p log2 p over normalized positive frequencies."""
    arr = _positive_array(freqs)
    p = arr / tree_sum(arr)
    return float(-tree_sum(p * np.log2(p)))


def renyi_entropy(freqs, alpha: float) -> float:
    """H_alpha = log2(sum p^alpha) / (1 - alpha), for alpha > 0, alpha != 1."""
    if not alpha > 0 or alpha == 1:
        raise ValueError(f"alpha must be > 0 and != 1, got {alpha}")
    arr = _positive_array(freqs)
    p = arr / tree_sum(arr)
    return float(math.log2(tree_sum(np.power(p, alpha))) / (1.0 - alpha))


def frequency_histogram(freqs) -> list[tuple[float, int]]:
    """(decade lower bound, token count) buckets covering [10^k, 10^(k+1)).

    Buckets run from 10^0 up to the decade of the largest frequency;
    frequencies below 1 are clamped into the first bucket.
    """
    if isinstance(freqs, Mapping):
        values = [float(v) for v in freqs.values() if v > 0.0]
    else:
        values = [float(v) for v in freqs if v > 0.0]
    if not values:
        return []
    arr = np.array(values, dtype=np.float64)
    top = int(np.searchsorted(_POW10, arr.max(), side="right"))
    bounds = _POW10[:top]
    counts = bucket_counts(arr, bounds)
    return [(float(bounds[k]), int(counts[k])) for k in range(top)]


@dataclass(frozen=True)
class AnalysisReport:
    shannon_bits: float
    renyi: dict
    histogram: list
    vocab_size: int
    total_token_occurrences: float


def recompute_token_freq(
    tokenizer: Tokenizer,
    counts: WordCounts,
    min_count_exclusive: int = 30,
    type_weighted: bool = False,
) -> dict[str, int]:
    """Token frequencies by tokenizing every retained word, count-weighted."""
    freqs: dict[str, int] = {}
    for word, count in sorted(counts.items()):
        if count <= min_count_exclusive:
            continue
        weight = 1 if type_weighted else count
        for token in tokenize_word(tokenizer, word):
            freqs[token] = freqs.get(token, 0) + weight
    return freqs


def analyze(
    vocab: Vocabulary,
    counts: WordCounts | None = None,
    tokenizer: Tokenizer | None = None,
    renyi_alphas: Iterable[float] = (0.5, 2.0, 3.0),
    min_count_exclusive: int = 30,
    type_weighted: bool = False,
) -> AnalysisReport:
    """Entropy and histogram report for a vocabulary.

    Frequencies come from ``vocab.token_freq`` when stored; otherwise (or
    for the type-weighted variant) they are recomputed by tokenizing every
    retained corpus word, which needs ``counts`` and ``tokenizer``.
    """
    if not vocab.tokens:
        raise ValueError("empty vocabulary")
    if type_weighted or not any(f > 0 for f in vocab.token_freq.values()):
        if counts is None or tokenizer is None:
            raise ValueError("recomputing frequencies needs counts and a tokenizer")
        freqs = recompute_token_freq(tokenizer, counts, min_count_exclusive, type_weighted)
    else:
        freqs = vocab.token_freq
    positive = {t: f for t, f in freqs.items() if f > 0}
    total = tree_sum(np.array([float(positive[t]) for t in sorted(positive)], dtype=np.float64))
    return AnalysisReport(
        shannon_bits=shannon_entropy(positive),
        renyi={float(a): renyi_entropy(positive, float(a)) for a in renyi_alphas},
        histogram=frequency_histogram(positive),
        vocab_size=len(vocab.tokens),
        total_token_occurrences=float(total),
    )


def save_report(report: AnalysisReport, path: str | Path | io.TextIOBase) -> None:
    payload = {
        "version": REPORT_FILE_VERSION,
        "shannon_bits": report.shannon_bits,
        "renyi": {repr(a): h for a, h in sorted(report.renyi.items())},
        "histogram": [[bound, count] for bound, count in report.histogram],
        "vocab_size": report.vocab_size,
        "total_token_occurrences": report.total_token_occurrences,
    }
    text = canonical_json(payload)
    if isinstance(path, (str, Path)):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        path.write(text)


def load_report(path: str | Path | io.TextIOBase) -> AnalysisReport:
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    else:
        payload = json.load(path)
    if payload.get("version") != REPORT_FILE_VERSION:
        raise ValueError(f"unsupported report file version {payload.get('version')!r}")
    return AnalysisReport(
        shannon_bits=payload["shannon_bits"],
        renyi={float(a): h for a, h in payload["renyi"].items()},
        histogram=[(bound, count) for bound, count in payload["histogram"]],
        vocab_size=payload["vocab_size"],
        total_token_occurrences=payload["total_token_occurrences"],
    )


def write_histogram_csv(report: AnalysisReport, handle: io.TextIOBase) -> None:
    """bucket_lower_bound,token_count rows for external plotting."""
    handle.write("bucket_lower_bound,token_count\n")
    for bound, count in report.histogram:
        handle.write(f"{bound:g},{count}\n")
