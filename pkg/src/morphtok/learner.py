"""MDL-style morphological segmentation learner.

The model stores a binary splitting tree per word; its leaves are the
word's current morphs.  Total cost in bits is

    lexicon_cost + alpha * corpus_cost + beta * annotation_cost

where corpus_cost is the negative log-likelihood of the morph tokens under
their own empirical distribution, lexicon_cost spells each distinct morph
with characters coded by the lexicon's empirical character distribution
plus an end marker of probability 1/(1 + average morph length), and
annotation_cost prices each annotated word's gold morph sequence under the
current morph distribution, with gold morphs absent from the lexicon paying
a fixed spell-out price over a uniform alphabet (see ``spell_out_bits``).

Training is a batch greedy search: epochs shuffle the words with a
Mersenne Twister (``random.Random(seed + epoch)``), each word's old tree
is removed and regrown by recursively comparing keep-whole against every
binary split point, and the regrown tree is kept only when the resulting
total cost does not exceed the last recorded total, so the recorded cost
sequence is non-increasing by construction.  Counts are real-valued
(frequency transforms produce non-integers); incremental bookkeeping is
resynced from the trees at every epoch end to cancel float drift.

Annotated words are hard-constrained: their trees are set to the gold
segmentation and never revisited.
"""

from __future__ import annotations

import io
import json
import math
import random
import warnings
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from ._kernels import tree_sum
from .annotations import SegmentationLexicon, score_segmentation
from .ingest import WordCounts

MODEL_FILE_VERSION = 1

# incremental real-valued counts are snapped to zero below this
_ZERO_EPS = 1e-9

# split trees: a leaf is a str, an internal node a (left, right) tuple


def tree_leaves(tree) -> Iterator[str]:
    if isinstance(tree, str):
        yield tree
    else:
        yield from tree_leaves(tree[0])
        yield from tree_leaves(tree[1])


def chain_tree(morphs: Sequence[str]):
    """Right-branching binary tree with the given leaves, in order."""
    if not morphs:
        raise ValueError("cannot build a tree with no leaves")
    if len(morphs) == 1:
        return morphs[0]
    return (morphs[0], chain_tree(morphs[1:]))


@dataclass(frozen=True)
class FrequencyTransform:
    """How raw corpus counts enter the learner.

    ``type`` ignores frequency entirely (every word weighs 1.0);
    ``token`` compresses counts to log_base(count + 1).
    """

    mode: str = "token"
    base: float = 30.0

    def __post_init__(self):
        if self.mode not in ("type", "token"):
            raise ValueError(f"mode must be 'type' or 'token', got {self.mode!r}")
        if not self.base > 1:
            raise ValueError(f"base must be > 1, got {self.base}")

    def apply(self, count: float) -> float:
        if self.mode == "type":
            return 1.0
        return math.log(count + 1.0, self.base)


def transform_counts(counts: WordCounts, transform: FrequencyTransform) -> dict[str, float]:
    if not len(counts):
        raise ValueError("empty counts")
    return {w: transform.apply(c) for w, c in counts.items()}


@dataclass(frozen=True)
class MorfessorParams:
    alpha: float = 1.0
    beta: float = 0.0
    epsilon_converge: float = 0.005
    max_epochs: int = 20
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be finite and > 0, got {self.alpha}")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")
        if not self.epsilon_converge > 0:
            raise ValueError("epsilon_converge must be > 0")


@dataclass(frozen=True)
class CostBreakdown:
    lexicon_cost: float
    corpus_cost: float
    annotation_cost: float
    total: float


def _xlog2(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def spell_out_bits(morph: str, alphabet_size: int) -> float:
    """Static price of an unknown gold morph: spell it character by
    character plus an end marker, uniformly over alphabet+1 symbols."""
    return (len(morph) + 1) * math.log2(alphabet_size + 1)


class _CostState:
    """Incremental bookkeeping for the three cost components.

    Maintains morph counts with Sum(c), Sum(c*log2 c); the lexicon's
    character counts with the matching sums; and the annotation reference
    counts.  ``trial_total`` prices hypothetical additions without
    mutating anything, which keeps candidate evaluation free of float
    churn.
    """

    def __init__(
        self,
        alpha: float,
        beta: float,
        annot_refs: Mapping[str, int],
        alphabet_size: int,
    ):
        self.alpha = alpha
        self.beta = beta
        self.counts: dict[str, float] = {}
        self.tokens = 0.0
        self.s_count_log = 0.0
        self.types = 0
        self.char_counts: dict[str, int] = {}
        self.total_chars = 0
        self.s_char_log = 0.0
        self.annot_refs = dict(annot_refs)
        self.refs_total = sum(self.annot_refs.values())
        self.refs_known = 0
        self.s_annot_log = 0.0
        # all gold morphs start unknown; their spell-out bits are constant
        self.spell_bits = {
            m: refs * spell_out_bits(m, alphabet_size) for m, refs in self.annot_refs.items()
        }
        self.s_unknown = math.fsum(self.spell_bits.values())

    # -- mutation ---------------------------------------------------------

    def add(self, morph: str, delta: float) -> None:
        old = self.counts.get(morph, 0.0)
        new = old + delta
        if abs(new) < _ZERO_EPS:
            new = 0.0
        if new < 0.0:
            raise AssertionError(f"negative count {new} for morph {morph!r}")
        self.tokens += new - old
        self.s_count_log += _xlog2(new) - _xlog2(old)
        refs = self.annot_refs.get(morph, 0)
        if old == 0.0 and new > 0.0:
            self.counts[morph] = new
            self.types += 1
            for ch in morph:
                occ = self.char_counts.get(ch, 0)
                self.char_counts[ch] = occ + 1
                self.s_char_log += _xlog2(occ + 1) - _xlog2(occ)
            self.total_chars += len(morph)
            if refs:
                self.refs_known += refs
                self.s_annot_log += refs * math.log2(new)
                self.s_unknown -= self.spell_bits[morph]
        elif old > 0.0 and new == 0.0:
            del self.counts[morph]
            self.types -= 1
            for ch in morph:
                occ = self.char_counts[ch]
                if occ == 1:
                    del self.char_counts[ch]
                else:
                    self.char_counts[ch] = occ - 1
                self.s_char_log += _xlog2(occ - 1) - _xlog2(occ)
            self.total_chars -= len(morph)
            if refs:
                self.refs_known -= refs
                self.s_annot_log -= refs * math.log2(old)
                self.s_unknown += self.spell_bits[morph]
        elif new > 0.0:
            self.counts[morph] = new
            if refs:
                self.s_annot_log += refs * (math.log2(new) - math.log2(old))

    def rebuild(self, counts: Mapping[str, float]) -> None:
        """Replace all aggregates with exact recomputations from ``counts``."""
        self.counts = dict(counts)
        self.tokens = math.fsum(self.counts.values())
        self.s_count_log = math.fsum(_xlog2(c) for c in self.counts.values())
        self.char_counts = {}
        for m in self.counts:
            for ch in m:
                self.char_counts[ch] = self.char_counts.get(ch, 0) + 1
        self.types = len(self.counts)
        self.total_chars = sum(len(m) for m in self.counts)
        self.s_char_log = math.fsum(_xlog2(c) for c in self.char_counts.values())
        self.refs_known = sum(r for m, r in self.annot_refs.items() if m in self.counts)
        self.s_annot_log = math.fsum(
            r * math.log2(self.counts[m]) for m, r in self.annot_refs.items() if m in self.counts
        )
        self.s_unknown = math.fsum(
            bits for m, bits in self.spell_bits.items() if m not in self.counts
        )

    # -- cost -------------------------------------------------------------

    @staticmethod
    def _corpus_cost(tokens: float, s_count_log: float) -> float:
        if tokens <= 0.0:
            return 0.0
        return tokens * math.log2(tokens) - s_count_log

    @staticmethod
    def _lexicon_cost(types: int, total_chars: int, s_char_log: float) -> float:
        if types == 0:
            return 0.0
        char_bits = total_chars * math.log2(total_chars) - s_char_log
        end_bits = types * math.log2((types + total_chars) / types)
        return char_bits + end_bits

    def _annotation_cost(
        self, tokens: float, refs_known: int, s_annot_log: float, s_unknown: float
    ) -> float:
        if self.refs_total == 0:
            return 0.0
        known = refs_known * math.log2(tokens) - s_annot_log if refs_known else 0.0
        return known + s_unknown

    def breakdown(self) -> CostBreakdown:
        corpus = self._corpus_cost(self.tokens, self.s_count_log)
        lexicon = self._lexicon_cost(self.types, self.total_chars, self.s_char_log)
        annot = self._annotation_cost(self.tokens, self.refs_known, self.s_annot_log, self.s_unknown)
        return CostBreakdown(
            lexicon_cost=lexicon,
            corpus_cost=corpus,
            annotation_cost=annot,
            total=lexicon + self.alpha * corpus + self.beta * annot,
        )

    def total(self) -> float:
        return self.breakdown().total

    def trial_total(self, additions: Sequence[tuple[str, float]]) -> float:
        """Total cost if the (morph, delta) additions were applied."""
        merged: dict[str, float] = {}
        for m, dc in additions:
            merged[m] = merged.get(m, 0.0) + dc
        tokens = self.tokens
        s_count_log = self.s_count_log
        types = self.types
        total_chars = self.total_chars
        s_char_log = self.s_char_log
        refs_known = self.refs_known
        s_annot_log = self.s_annot_log
        s_unknown = self.s_unknown
        char_delta: dict[str, int] = {}
        for m, dc in merged.items():
            old = self.counts.get(m, 0.0)
            new = old + dc
            if abs(new) < _ZERO_EPS:
                new = 0.0
            tokens += new - old
            s_count_log += _xlog2(new) - _xlog2(old)
            refs = self.annot_refs.get(m, 0)
            if old == 0.0 and new > 0.0:
                types += 1
                total_chars += len(m)
                for ch in m:
                    char_delta[ch] = char_delta.get(ch, 0) + 1
                if refs:
                    refs_known += refs
                    s_annot_log += refs * math.log2(new)
                    s_unknown -= self.spell_bits[m]
            elif old > 0.0 and new == 0.0:
                types -= 1
                total_chars -= len(m)
                for ch in m:
                    char_delta[ch] = char_delta.get(ch, 0) - 1
                if refs:
                    refs_known -= refs
                    s_annot_log -= refs * math.log2(old)
                    s_unknown += self.spell_bits[m]
            elif new > 0.0 and refs:
                s_annot_log += refs * (math.log2(new) - math.log2(old))
        for ch, d in char_delta.items():
            occ = self.char_counts.get(ch, 0)
            s_char_log += _xlog2(occ + d) - _xlog2(occ)
        corpus = self._corpus_cost(tokens, s_count_log)
        lexicon = self._lexicon_cost(types, total_chars, s_char_log)
        annot = self._annotation_cost(tokens, refs_known, s_annot_log, s_unknown)
        return lexicon + self.alpha * corpus + self.beta * annot


# eq=False keeps identity hashing (fields hold dicts); equality of trained
# models is checked through their canonical serialization
@dataclass(frozen=True, eq=False)
class MorfessorModel:
    """Trained segmentation model: morph lexicon plus per-word split trees."""

    morph_counts: dict[str, float]
    total_morph_tokens: float
    split_trees: dict
    alphabet: dict[str, float]
    params: MorfessorParams
    annotated_words: frozenset

    def segmentation(self, word: str) -> tuple[str, ...]:
        """Leaf sequence of the word's split tree (training words only)."""
        return tuple(tree_leaves(self.split_trees[word]))

    def segmentation_lexicon(self) -> SegmentationLexicon:
        return SegmentationLexicon({w: tuple(tree_leaves(t)) for w, t in self.split_trees.items()})


def reconstruct_morph_counts(split_trees: Mapping, weights: Mapping[str, float]) -> dict[str, float]:
    """Aggregate leaf multisets over all trees, weighted per word.

    Accumulation order is fixed (sorted words, left-to-right leaves) so the
    result is reproducible.
    """
    counts: dict[str, float] = {}
    for word in sorted(split_trees):
        c = weights.get(word, 0.0)
        if c <= 0.0:
            continue
        for leaf in tree_leaves(split_trees[word]):
            counts[leaf] = counts.get(leaf, 0.0) + c
    return counts


def _alphabet_costs(morph_counts: Mapping[str, float]) -> dict[str, float]:
    char_counts: dict[str, int] = {}
    for m in morph_counts:
        for ch in m:
            char_counts[ch] = char_counts.get(ch, 0) + 1
    total = sum(char_counts.values())
    return {ch: -math.log2(cc / total) for ch, cc in sorted(char_counts.items())}


def total_cost(model: MorfessorModel) -> CostBreakdown:
    """Recompute the cost breakdown of a model from its stored fields."""
    if not model.morph_counts:
        raise ValueError("empty model")
    total = model.total_morph_tokens
    morphs = sorted(model.morph_counts)
    corpus = -tree_sum(
        np.array(
            [model.morph_counts[m] * math.log2(model.morph_counts[m] / total) for m in morphs],
            dtype=np.float64,
        )
    )
    char_counts: dict[str, int] = {}
    for m in morphs:
        for ch in m:
            char_counts[ch] = char_counts.get(ch, 0) + 1
    total_chars = sum(char_counts.values())
    types = len(morphs)
    char_bits = math.fsum(
        -cc * math.log2(cc / total_chars) for cc in char_counts.values()
    )
    lexicon = char_bits + types * math.log2((types + total_chars) / types)
    alphabet_size = len({ch for w in model.split_trees for ch in w})
    annot = 0.0
    for w in sorted(model.annotated_words):
        for m in tree_leaves(model.split_trees[w]):
            c = model.morph_counts.get(m, 0.0)
            if c > 0.0:
                annot -= math.log2(c / total)
            else:
                annot += spell_out_bits(m, alphabet_size)
    return CostBreakdown(
        lexicon_cost=lexicon,
        corpus_cost=corpus,
        annotation_cost=annot,
        total=lexicon + model.params.alpha * corpus + model.params.beta * annot,
    )


class _Trainer:
    def __init__(
        self,
        weighted: Mapping[str, float],
        annotations: SegmentationLexicon,
        params: MorfessorParams,
        check_invariants: bool,
    ):
        refs: dict[str, int] = {}
        for w in sorted(annotations.keys()):
            for m in annotations[w]:
                refs[m] = refs.get(m, 0) + 1
        self.params = params
        self.annotations = annotations
        self.check_invariants = check_invariants
        self.weights: dict[str, float] = {}
        self.trees: dict = {}
        for w in sorted(weighted):
            weight = float(weighted[w])
            if not (math.isfinite(weight) and weight > 0):
                raise ValueError(f"weight for {w!r} must be finite and > 0, got {weight}")
            self.weights[w] = weight
        for w in sorted(annotations.keys()):
            self.weights.setdefault(w, 0.0)
        alphabet = set()
        for w in self.weights:
            alphabet.update(w)
        self.state = _CostState(params.alpha, params.beta, refs, len(alphabet))
        for w in sorted(self.weights):
            tree = chain_tree(annotations[w]) if w in annotations else w
            self.trees[w] = tree
            c = self.weights[w]
            if c > 0.0:
                for leaf in tree_leaves(tree):
                    self.state.add(leaf, c)

    def _grow(self, piece: str, c: float):
        """Greedy recursive split of one piece; applies leaf counts as it goes."""
        n = len(piece)
        if n == 1:
            self.state.add(piece, c)
            return piece
        best_cost = self.state.trial_total([(piece, c)])
        best_split = 0
        for i in range(1, n):
            cost = self.state.trial_total([(piece[:i], c), (piece[i:], c)])
            if cost < best_cost:
                best_cost = cost
                best_split = i
        if best_split == 0:
            self.state.add(piece, c)
            return piece
        return (self._grow(piece[:best_split], c), self._grow(piece[best_split:], c))

    def _resplit(self, word: str, last_recorded: float, record: Callable[[float], None]) -> float:
        c = self.weights[word]
        old_tree = self.trees[word]
        for leaf in tree_leaves(old_tree):
            self.state.add(leaf, -c)
        new_tree = self._grow(word, c)
        cost = self.state.total()
        if cost <= last_recorded:
            self.trees[word] = new_tree
            record(cost)
            return cost
        # regrowth did not beat the recorded cost: restore the old tree
        for leaf in tree_leaves(new_tree):
            self.state.add(leaf, -c)
        for leaf in tree_leaves(old_tree):
            self.state.add(leaf, c)
        return last_recorded

    def _verify_epoch(self, rebuilt: Mapping[str, float]) -> None:
        if set(rebuilt) != set(self.state.counts):
            raise AssertionError("morph count keys diverged from split trees")
        for m, c in rebuilt.items():
            stored = self.state.counts[m]
            if abs(stored - c) > 1e-6 * max(abs(c), 1.0):
                raise AssertionError(f"count drift for {m!r}: stored {stored}, rebuilt {c}")
        for w, tree in self.trees.items():
            if "".join(tree_leaves(tree)) != w:
                raise AssertionError(f"tree leaves do not concatenate to {w!r}")

    def run(self, cost_log: list | None) -> MorfessorModel:
        record = cost_log.append if cost_log is not None else (lambda _cost: None)
        last_recorded = self.state.total()
        record(last_recorded)
        trainable = sorted(
            w for w in self.weights if w not in self.annotations and len(w) >= 2 and self.weights[w] > 0
        )
        prev_cost = last_recorded
        for epoch in range(self.params.max_epochs):
            order = list(trainable)
            random.Random(self.params.seed + epoch).shuffle(order)
            for w in order:
                last_recorded = self._resplit(w, last_recorded, record)
            rebuilt = reconstruct_morph_counts(self.trees, self.weights)
            if self.check_invariants:
                self._verify_epoch(rebuilt)
            self.state.rebuild(rebuilt)
            epoch_cost = self.state.total()
            improvement = prev_cost - epoch_cost
            if improvement < self.params.epsilon_converge * max(abs(prev_cost), 1e-12):
                break
            prev_cost = epoch_cost
        final_counts = reconstruct_morph_counts(self.trees, self.weights)
        keys = sorted(final_counts)
        return MorfessorModel(
            morph_counts={m: final_counts[m] for m in keys},
            total_morph_tokens=tree_sum(np.array([final_counts[m] for m in keys], dtype=np.float64)),
            split_trees=dict(sorted(self.trees.items())),
            alphabet=_alphabet_costs(final_counts),
            params=self.params,
            annotated_words=frozenset(self.annotations.keys()),
        )


def train(
    weighted: Mapping[str, float],
    annotations: SegmentationLexicon | None = None,
    params: MorfessorParams = MorfessorParams(),
    cost_log: list | None = None,
    check_invariants: bool = False,
) -> MorfessorModel:
    """Learn a morph lexicon and split trees from transformed word counts.

    ``annotations`` entries are pinned to their gold splits for the whole
    run.  ``cost_log``, when given, receives the total cost after every
    accepted decision (non-increasing).  ``check_invariants`` turns on the
    per-epoch count-conservation and concatenation assertions.
    """
    if not weighted:
        raise ValueError("empty training input")
    annotations = annotations if annotations is not None else SegmentationLexicon({})
    return _Trainer(weighted, annotations, params, check_invariants).run(cost_log)


DEFAULT_TUNE_GRID: tuple = tuple(
    (alpha, beta) for alpha in (0.5, 1.0) for beta in (0.0, 100.0, 500.0, 1000.0, 2500.0)
)


def tune_weights(
    weighted: Mapping[str, float],
    annotations: SegmentationLexicon,
    dev: SegmentationLexicon,
    grid: Iterable[tuple[float, float]] = DEFAULT_TUNE_GRID,
    params: MorfessorParams = MorfessorParams(),
) -> MorfessorParams:
    """Grid-search (alpha, beta) by boundary F1 on dev segmentations.

    One model is trained per grid point with the same seed; dev words are
    segmented with the Viterbi segmenter.  Ties break toward smaller beta,
    then smaller alpha.
    """
    from .segmenter import viterbi_segment

    grid = list(dict.fromkeys(grid))
    if not grid:
        raise ValueError("empty grid")
    if not len(dev):
        raise ValueError("empty dev lexicon")
    overlap = sum(1 for w in dev.keys() if w in annotations)
    if overlap:
        warnings.warn(f"dev overlaps annotations on {overlap} words", stacklevel=2)
    results = []
    for alpha, beta in grid:
        point = replace(params, alpha=float(alpha), beta=float(beta))
        model = train(weighted, annotations, point)
        pred = SegmentationLexicon({w: viterbi_segment(model, w)[0] for w in dev.keys()})
        f1 = score_segmentation(pred, dev).boundary_f1
        results.append((f1, alpha, beta))
    best_f1 = max(r[0] for r in results)
    _, alpha, beta = min((r for r in results if r[0] == best_f1), key=lambda r: (r[2], r[1]))
    return replace(params, alpha=float(alpha), beta=float(beta))


# -- model file -------------------------------------------------------------


def _tree_to_json(tree):
    if isinstance(tree, str):
        return tree
    return [_tree_to_json(tree[0]), _tree_to_json(tree[1])]


def _tree_from_json(obj):
    if isinstance(obj, str):
        return obj
    left, right = obj
    return (_tree_from_json(left), _tree_from_json(right))


def canonical_json(obj) -> str:
    """Sorted keys, shortest round-trip floats, compact separators, LF end."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, allow_nan=False, separators=(",", ":")) + "\n"


def save_model(model: MorfessorModel, path: str | Path | io.TextIOBase) -> None:
    payload = {
        "version": MODEL_FILE_VERSION,
        "params": {
            "alpha": model.params.alpha,
            "beta": model.params.beta,
            "epsilon_converge": model.params.epsilon_converge,
            "max_epochs": model.params.max_epochs,
            "seed": model.params.seed,
        },
        "alphabet": model.alphabet,
        "morph_counts": model.morph_counts,
        "split_trees": {w: _tree_to_json(t) for w, t in model.split_trees.items()},
        "annotated_words": sorted(model.annotated_words),
        "seed": model.params.seed,
    }
    text = canonical_json(payload)
    if isinstance(path, (str, Path)):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        path.write(text)


def load_model(path: str | Path | io.TextIOBase) -> MorfessorModel:
    if isinstance(path, (str, Path)):
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    else:
        payload = json.load(path)
    if payload.get("version") != MODEL_FILE_VERSION:
        raise ValueError(f"unsupported model file version {payload.get('version')!r}")
    params = MorfessorParams(**payload["params"])
    counts = {m: float(c) for m, c in sorted(payload["morph_counts"].items())}
    return MorfessorModel(
        morph_counts=counts,
        total_morph_tokens=tree_sum(np.array(list(counts.values()), dtype=np.float64)),
        split_trees={w: _tree_from_json(t) for w, t in sorted(payload["split_trees"].items())},
        alphabet={ch: float(v) for ch, v in payload["alphabet"].items()},
        params=params,
        annotated_words=frozenset(payload["annotated_words"]),
    )
