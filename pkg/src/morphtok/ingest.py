"""Corpus cleaning, word counting and frequency filtering.

The cleaning rule list is this package's own (deterministic and documented
here), applied in order per line:

1. lowercase (when ``CleanConfig.lowercase``),
2. remove URL tokens: any run of non-whitespace starting with
   ``scheme://`` or ``www.``,
3. map every character outside the configured alphabet to a space
   (the alphabet is word characters + whitespace + retained punctuation),
4. pad retained punctuation with spaces so it becomes standalone tokens,
5. collapse runs of whitespace to single spaces.
"""

from __future__ import annotations

import io
import re
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

DEFAULT_WORD_CHARS = string.ascii_lowercase + string.ascii_uppercase + string.digits + "'-"
DEFAULT_PUNCTUATION = '.,!?;:"()[]'

_URL_RE = re.compile(r"(?:[a-z][a-z0-9+.\-]*://|www\.)\S*", re.IGNORECASE)


@dataclass(frozen=True)
class CleanConfig:
    lowercase: bool = True
    strip_urls: bool = True
    word_chars: str = DEFAULT_WORD_CHARS
    punctuation: str = DEFAULT_PUNCTUATION
    # how to read byte streams that are not valid UTF-8: "replace" or "ignore"
    errors: str = "replace"

    def word_char_set(self) -> frozenset:
        return frozenset(self.word_chars)

    def punctuation_set(self) -> frozenset:
        return frozenset(self.punctuation)


class _SpaceByDefault(dict):
    def __missing__(self, key):
        return " "


@lru_cache(maxsize=8)
def _translation(config: CleanConfig) -> _SpaceByDefault:
    # whitespace and out-of-alphabet characters both map to a plain space
    table = _SpaceByDefault()
    for ch in config.word_chars:
        table[ord(ch)] = ch
    for ch in config.punctuation:
        table[ord(ch)] = f" {ch} "
    return table


def clean_line(line: str, config: CleanConfig = CleanConfig()) -> str:
    """Apply the documented rule list to one line of text."""
    if config.lowercase:
        line = line.lower()
    if config.strip_urls:
        line = _URL_RE.sub(" ", line)
    return " ".join(line.translate(_translation(config)).split())


def clean_lines(lines: Iterable[str], config: CleanConfig = CleanConfig()) -> Iterator[str]:
    """Clean a stream of lines; yields one cleaned line per input line."""
    for line in lines:
        yield clean_line(line, config)


def open_text(path, config: CleanConfig = CleanConfig()):
    """Open a file for reading with the config's invalid-byte policy."""
    return open(path, "r", encoding="utf-8", errors=config.errors)


def clean_text(text: str, config: CleanConfig = CleanConfig()) -> str:
    return "\n".join(clean_lines(text.split("\n"), config))


class WordCounts:
    """Immutable multiset of surface words with positive integer counts.

    Keys must be non-empty and contain no whitespace; the cached total
    always equals the sum of counts.
    """

    __slots__ = ("_entries", "_total")

    def __init__(self, entries: Mapping[str, int]):
        checked = {}
        total = 0
        for word, count in entries.items():
            if not word:
                raise ValueError("empty word in counts")
            if any(ch.isspace() for ch in word):
                raise ValueError(f"word contains whitespace: {word!r}")
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise ValueError(f"count for {word!r} must be a positive integer, got {count!r}")
            checked[word] = count
            total += count
        self._entries = checked
        self._total = total

    @property
    def total(self) -> int:
        return self._total

    def items(self):
        return self._entries.items()

    def keys(self):
        return self._entries.keys()

    def get(self, word: str, default: int = 0) -> int:
        return self._entries.get(word, default)

    def __getitem__(self, word: str) -> int:
        return self._entries[word]

    def __contains__(self, word: str) -> bool:
        return word in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, WordCounts) and self._entries == other._entries

    def __repr__(self) -> str:
        return f"WordCounts({len(self._entries)} types, {self._total} tokens)"

    def sorted_items(self):
        """(word, count) pairs by descending count, then word."""
        return sorted(self._entries.items(), key=lambda kv: (-kv[1], kv[0]))


def count_words(lines: Iterable[str]) -> WordCounts:
    """Count whitespace-delimited words in already-cleaned lines."""
    counts: dict[str, int] = {}
    for line in lines:
        for word in line.split():
            counts[word] = counts.get(word, 0) + 1
    return WordCounts(counts)


def filter_counts(counts: WordCounts, min_exclusive: int = 30) -> WordCounts:
    """Keep only entries whose count is strictly greater than ``min_exclusive``."""
    if min_exclusive < 0:
        raise ValueError(f"min_exclusive must be >= 0, got {min_exclusive}")
    return WordCounts({w: c for w, c in counts.items() if c > min_exclusive})


def write_counts_tsv(counts: WordCounts, handle: io.TextIOBase) -> None:
    """word<TAB>count per line, descending count then word, LF endings."""
    for word, count in counts.sorted_items():
        handle.write(f"{word}\t{count}\n")


def read_counts_tsv(handle: io.TextIOBase) -> WordCounts:
    entries: dict[str, int] = {}
    for lineno, line in enumerate(handle, 1):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"counts TSV line {lineno}: expected 2 columns, got {len(parts)}")
        entries[parts[0]] = int(parts[1])
    return WordCounts(entries)
