"""Morphological subword tokenization toolkit.

Pipeline: clean and count a corpus, learn an MDL segmentation model
(optionally guided by sampled gold annotations), build marker-prefixed
vocabularies (type / token / keep-frequent / lexicon-backed variants),
tokenize with UNK fallback, and analyze token frequency distributions.
"""

from ._kernels import BACKEND, HAS_NUMBA
from .analysis import (
    AnalysisReport,
    analyze,
    frequency_histogram,
    renyi_entropy,
    shannon_entropy,
)
from .annotations import (
    AnnotationSampler,
    SegmentationLexicon,
    SegScores,
    parse_gold,
    sample_annotations,
    sampling_weights,
    score_segmentation,
    write_lexicon_tsv,
)
from .ingest import (
    CleanConfig,
    WordCounts,
    clean_lines,
    clean_text,
    count_words,
    filter_counts,
    read_counts_tsv,
    write_counts_tsv,
)
from .learner import (
    CostBreakdown,
    FrequencyTransform,
    MorfessorModel,
    MorfessorParams,
    load_model,
    save_model,
    total_cost,
    train,
    transform_counts,
    tune_weights,
)
from .segmenter import SegmentationProvider, segment, viterbi_segment
from .tokenizer import Tokenizer, detokenize, tokenize_text, tokenize_word
from .vocab import (
    DiffReport,
    VocabConfig,
    Vocabulary,
    build_vocab,
    load_vocab,
    save_vocab,
    vocab_diff,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "AnalysisReport",
    "AnnotationSampler",
    "CleanConfig",
    "CostBreakdown",
    "DiffReport",
    "FrequencyTransform",
    "MorfessorModel",
    "MorfessorParams",
    "SegScores",
    "SegmentationLexicon",
    "SegmentationProvider",
    "Tokenizer",
    "VocabConfig",
    "Vocabulary",
    "WordCounts",
    "analyze",
    "build_vocab",
    "clean_lines",
    "clean_text",
    "count_words",
    "detokenize",
    "filter_counts",
    "frequency_histogram",
    "load_model",
    "load_vocab",
    "parse_gold",
    "read_counts_tsv",
    "renyi_entropy",
    "sample_annotations",
    "sampling_weights",
    "save_model",
    "save_vocab",
    "score_segmentation",
    "segment",
    "shannon_entropy",
    "tokenize_text",
    "tokenize_word",
    "total_cost",
    "train",
    "transform_counts",
    "tune_weights",
    "viterbi_segment",
    "vocab_diff",
    "write_counts_tsv",
    "write_lexicon_tsv",
]
