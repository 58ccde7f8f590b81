"""Training for the seq2seq segmenter.

Desk-scale defaults (epochs 40, subword vocabulary 1000) replace the
full-scale settings (400 epochs, 8000 pieces), which remain reachable
through the config; everything else keeps the full-scale values: 6
encoder/decoder layers, 8 heads, 256-dim embeddings, 1024-dim
feedforward, dropout 0.3, 4096 tokens per batch (batch size is counted
in padded tokens, not sequences), learning rate 1e-3.

The held-out split, batch packing and parameter init are all seeded, so
one seed gives one training trajectory (CPU torch kernels are
deterministic; the documented tolerance for replays is 1e-6 relative).
"""

from __future__ import annotations

import random
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import torch
from torch import nn

from .model import BOS, EOS, PAD, SEP, PieceVocab, Seq2SeqSegmenter
from .subword import SubwordInventory, fit_inventory


@dataclass(frozen=True)
class NeuralConfig:
    layers: int = 6
    attention_heads: int = 8
    embedding_size: int = 256
    feedforward_dim: int = 1024
    dropout: float = 0.3
    batch_tokens: int = 4096
    learning_rate: float = 0.001
    epochs: int = 40          # full scale: 400
    subword_vocab: int = 1000  # full scale: 8000
    seed: int = 0
    heldout_fraction: float = 0.1

    def __post_init__(self):
        numeric = (
            self.layers, self.attention_heads, self.embedding_size,
            self.feedforward_dim, self.batch_tokens, self.learning_rate,
            self.epochs, self.subword_vocab,
        )
        if any(v <= 0 for v in numeric):
            raise ValueError("all size/rate hyperparameters must be positive")
        if not 0 <= self.dropout < 1:
            raise ValueError("dropout must be in [0, 1)")
        if not 0 <= self.heldout_fraction < 1:
            raise ValueError("heldout_fraction must be in [0, 1)")


@dataclass
class Bundle:
    """Everything needed to segment: weights, piece vocab, inventory, config."""

    model: Seq2SeqSegmenter
    vocab: PieceVocab
    inventory: SubwordInventory
    config: NeuralConfig

    def save(self, path: str | Path) -> None:
        torch.save(
            {
                "state_dict": self.model.state_dict(),
                "pieces": self.vocab.pieces,
                "piece_logp": self.inventory.piece_logp,
                "max_piece_len": self.inventory.max_piece_len,
                "config": asdict(self.config),
            },
            path,
        )


def load_checkpoint(path: str | Path) -> Bundle:
    payload = torch.load(path, map_location="cpu", weights_only=False)
    config = NeuralConfig(**payload["config"])
    vocab = PieceVocab(payload["pieces"])
    model = _build_model(len(vocab), config)
    model.load_state_dict(payload["state_dict"])
    model.eval()
    inventory = SubwordInventory(payload["piece_logp"], payload["max_piece_len"])
    return Bundle(model, vocab, inventory, config)


def _build_model(vocab_size: int, cfg: NeuralConfig) -> Seq2SeqSegmenter:
    return Seq2SeqSegmenter(
        vocab_size=vocab_size,
        layers=cfg.layers,
        attention_heads=cfg.attention_heads,
        embedding_size=cfg.embedding_size,
        feedforward_dim=cfg.feedforward_dim,
        dropout=cfg.dropout,
    )


def heldout_split(
    pairs: Mapping[str, Sequence[str]], cfg: NeuralConfig
) -> tuple[dict[str, tuple[str, ...]], dict[str, tuple[str, ...]]]:
    """Deterministic train/held-out partition of the word list."""
    words = sorted(pairs)
    random.Random(cfg.seed).shuffle(words)
    n_held = max(1, int(len(words) * cfg.heldout_fraction)) if cfg.heldout_fraction else 0
    held = {w: tuple(pairs[w]) for w in words[:n_held]}
    train = {w: tuple(pairs[w]) for w in words[n_held:]}
    return train, held


def encode_source(inventory: SubwordInventory, vocab: PieceVocab, word: str) -> list[int]:
    return vocab.encode_pieces(inventory.encode(word)) + [EOS]


def encode_target(
    inventory: SubwordInventory, vocab: PieceVocab, morphs: Sequence[str]
) -> list[int]:
    ids = [BOS]
    for k, morph in enumerate(morphs):
        if k:
            ids.append(SEP)
        ids.extend(vocab.encode_pieces(inventory.encode(morph)))
    ids.append(EOS)
    return ids


def _pad_batch(rows: list[list[int]]) -> torch.Tensor:
    width = max(len(r) for r in rows)
    out = torch.full((len(rows), width), PAD, dtype=torch.long)
    for i, row in enumerate(rows):
        out[i, : len(row)] = torch.tensor(row, dtype=torch.long)
    return out


def _pack_batches(examples: list[tuple[list[int], list[int]]], batch_tokens: int):
    """Greedy packing of consecutive examples up to ~batch_tokens padded tokens."""
    batches = []
    current: list[tuple[list[int], list[int]]] = []
    src_w = tgt_w = 0
    for src, tgt in examples:
        src_w2 = max(src_w, len(src))
        tgt_w2 = max(tgt_w, len(tgt))
        if current and (src_w2 + tgt_w2) * (len(current) + 1) > batch_tokens:
            batches.append(current)
            current, src_w, tgt_w = [], 0, 0
            src_w2, tgt_w2 = len(src), len(tgt)
        current.append((src, tgt))
        src_w, tgt_w = src_w2, tgt_w2
    if current:
        batches.append(current)
    return batches


@dataclass
class TrainResult:
    bundle: Bundle
    log: dict = field(default_factory=dict)


def train_seq2seq(pairs: Mapping[str, Sequence[str]], cfg: NeuralConfig = NeuralConfig()) -> TrainResult:
    """Train on word -> morph-sequence pairs; returns the bundle and a log.

    The subword inventory is fit on the training side of the split only.
    The log records the mean loss per epoch and the held-out exact-match
    rate of raw (unrepaired) predictions.
    """
    if len(pairs) < 100:
        raise ValueError(f"need at least 100 training pairs, got {len(pairs)}")
    for word, morphs in pairs.items():
        if "".join(morphs) != word:
            raise ValueError(f"morphs {tuple(morphs)!r} do not concatenate to {word!r}")

    torch.manual_seed(cfg.seed)
    train_pairs, held_pairs = heldout_split(pairs, cfg)
    inventory = fit_inventory(sorted(train_pairs), cfg.subword_vocab)
    vocab = PieceVocab(inventory.pieces())
    model = _build_model(len(vocab), cfg)

    examples = [
        (encode_source(inventory, vocab, w), encode_target(inventory, vocab, train_pairs[w]))
        for w in sorted(train_pairs)
    ]
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    criterion = nn.CrossEntropyLoss(ignore_index=PAD)

    # linear warmup over the first 10% of steps, then constant lr; without
    # it the few hundred desk-scale steps never leave the initial plateau
    steps_per_epoch = len(_pack_batches(examples, cfg.batch_tokens))
    warmup_steps = max(1, steps_per_epoch * cfg.epochs // 10)

    epoch_losses: list[float] = []
    order = list(range(len(examples)))
    step = 0
    for epoch in range(cfg.epochs):
        model.train()
        random.Random(cfg.seed + 1 + epoch).shuffle(order)
        shuffled = [examples[i] for i in order]
        total_loss = 0.0
        n_batches = 0
        for batch in _pack_batches(shuffled, cfg.batch_tokens):
            step += 1
            scale = min(1.0, step / warmup_steps)
            for group in optimizer.param_groups:
                group["lr"] = cfg.learning_rate * scale
            src = _pad_batch([b[0] for b in batch])
            tgt = _pad_batch([b[1] for b in batch])
            logits = model(src, tgt[:, :-1])
            loss = criterion(logits.reshape(-1, logits.size(-1)), tgt[:, 1:].reshape(-1))
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total_loss += loss.detach().item()
            n_batches += 1
        epoch_losses.append(total_loss / n_batches)

    if epoch_losses and epoch_losses[-1] > epoch_losses[0]:
        warnings.warn(
            f"training loss did not improve: first {epoch_losses[0]:.4f}, "
            f"last {epoch_losses[-1]:.4f}",
            stacklevel=2,
        )

    bundle = Bundle(model, vocab, inventory, cfg)
    log = {
        "config": asdict(cfg),
        "n_train": len(train_pairs),
        "n_heldout": len(held_pairs),
        "inventory_size": len(inventory),
        "epoch_losses": epoch_losses,
    }
    if held_pairs:
        from .predict import predict_segmentations

        records = predict_segmentations(bundle, sorted(held_pairs))
        exact = sum(1 for r in records if tuple(r.predicted_morphs) == held_pairs[r.word])
        log["heldout_exact_match"] = exact / len(held_pairs)
        log["heldout_valid_raw"] = sum(
            1 for r in records if "".join(r.predicted_morphs) == r.word
        ) / len(held_pairs)
    return TrainResult(bundle=bundle, log=log)
