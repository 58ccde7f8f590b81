"""Transformer seq2seq morphological segmenter.

Trains on word -> morph-sequence pairs, predicts segmentations for word
lists, repairs hallucinated outputs to whole words, and exports the
canonical lexicon TSV the morphtok toolkit ingests.
"""

from .data import read_gold_tsv, read_word_list, write_lexicon_tsv
from .predict import (
    PredictionRecord,
    predict_segmentations,
    repair_hallucinations,
    repair_rate,
)
from .subword import SubwordInventory, fit_inventory
from .train import (
    Bundle,
    NeuralConfig,
    TrainResult,
    heldout_split,
    load_checkpoint,
    train_seq2seq,
)

__version__ = "0.1.0"

__all__ = [
    "Bundle",
    "NeuralConfig",
    "PredictionRecord",
    "SubwordInventory",
    "TrainResult",
    "fit_inventory",
    "heldout_split",
    "load_checkpoint",
    "predict_segmentations",
    "read_gold_tsv",
    "read_word_list",
    "repair_hallucinations",
    "repair_rate",
    "train_seq2seq",
    "write_lexicon_tsv",
]
