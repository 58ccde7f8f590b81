"""Gold/lexicon TSV formats shared with the morphtok toolkit.

This package talks to the tokenization toolkit only through these files:
gold segmentations come in as ``word<TAB>morph1 morph2 ...`` (optionally
with ``@@``-style continuation markers, stripped here), and predictions go
out in the same canonical space-separated form.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence


@dataclass
class RejectedLine:
    lineno: int
    text: str
    reason: str


def read_gold_tsv(
    path: str | Path | io.TextIOBase,
    morph_separator: str = "@@",
) -> tuple[dict[str, tuple[str, ...]], list[RejectedLine]]:
    """Word -> morphs pairs plus a list of rejected lines.

    Lines whose morphs do not concatenate to the word are skipped and
    reported, mirroring the toolkit's ingestion rules.
    """
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            return read_gold_tsv(handle, morph_separator)
    entries: dict[str, tuple[str, ...]] = {}
    rejects: list[RejectedLine] = []
    for lineno, raw in enumerate(path, 1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) < 2:
            rejects.append(RejectedLine(lineno, line, "expected >= 2 columns"))
            continue
        word, segmentation = cols[0], cols[1]
        pieces = segmentation.split()
        if morph_separator:
            pieces = [p.replace(morph_separator, "") for p in pieces]
        morphs = tuple(p for p in pieces if p)
        if not morphs or "".join(morphs) != word:
            rejects.append(RejectedLine(lineno, line, "morphs do not concatenate to word"))
            continue
        entries[word] = morphs
    return entries, rejects


def write_lexicon_tsv(entries: Mapping[str, Sequence[str]], path: str | Path | io.TextIOBase) -> None:
    """Canonical lexicon TSV: word<TAB>space-separated morphs, sorted by word."""
    if isinstance(path, (str, Path)):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            write_lexicon_tsv(entries, handle)
        return
    for word in sorted(entries):
        path.write(f"{word}\t{' '.join(entries[word])}\n")


def read_word_list(path: str | Path | io.TextIOBase) -> list[str]:
    """One word per line; first tab-separated column if the file is a TSV."""
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            return read_word_list(handle)
    words = []
    for raw in path:
        line = raw.strip()
        if line:
            words.append(line.split("\t")[0])
    return words
