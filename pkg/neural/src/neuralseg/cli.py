"""CLI: train on a gold TSV, predict a lexicon TSV for a word list.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from pathlib import Path

from .data import read_gold_tsv, read_word_list, write_lexicon_tsv
from .predict import predict_segmentations, repair_hallucinations, repair_rate
from .train import NeuralConfig, load_checkpoint, train_seq2seq


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _config_from_args(args) -> NeuralConfig:
    kwargs = {}
    for f in fields(NeuralConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            kwargs[f.name] = value
    return NeuralConfig(**kwargs)


def _cmd_train(args) -> int:
    if not Path(args.gold).exists():
        print(f"neuralseg: missing gold file: {args.gold}", file=sys.stderr)
        return 2
    pairs, rejects = read_gold_tsv(args.gold, args.morph_sep)
    if rejects:
        print(f"warning: {len(rejects)} rejected gold lines", file=sys.stderr)
    try:
        result = train_seq2seq(pairs, _config_from_args(args))
    except ValueError as exc:
        print(f"neuralseg: {exc}", file=sys.stderr)
        return 2
    result.bundle.save(args.output)
    if args.log:
        with open(args.log, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(result.log, handle, indent=2, sort_keys=True)
            handle.write("\n")
    if "heldout_exact_match" in result.log:
        print(f"heldout exact match: {result.log['heldout_exact_match']:.3f}", file=sys.stderr)
    return 0


def _cmd_predict(args) -> int:
    for path in (args.checkpoint, args.words):
        if not Path(path).exists():
            print(f"neuralseg: missing file: {path}", file=sys.stderr)
            return 2
    bundle = load_checkpoint(args.checkpoint)
    words = read_word_list(args.words)
    records = repair_hallucinations(predict_segmentations(bundle, words))
    print(f"repair rate: {repair_rate(records):.4f} over {len(records)} words", file=sys.stderr)
    write_lexicon_tsv({r.word: r.predicted_morphs for r in records}, args.output)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="neuralseg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train on a gold segmentation TSV")
    p.add_argument("--gold", required=True)
    p.add_argument("--morph-sep", default="@@")
    p.add_argument("--output", required=True, help="checkpoint path (.pt)")
    p.add_argument("--log", help="training log JSON path")
    p.add_argument("--layers", type=int)
    p.add_argument("--attention-heads", dest="attention_heads", type=int)
    p.add_argument("--embedding-size", dest="embedding_size", type=int)
    p.add_argument("--feedforward-dim", dest="feedforward_dim", type=int)
    p.add_argument("--dropout", type=float)
    p.add_argument("--batch-tokens", dest="batch_tokens", type=int)
    p.add_argument("--learning-rate", dest="learning_rate", type=float)
    p.add_argument("--epochs", type=int, help="desk default 40 (full scale 400)")
    p.add_argument("--subword-vocab", dest="subword_vocab", type=int,
                   help="desk default 1000 (full scale 8000)")
    p.add_argument("--heldout-fraction", dest="heldout_fraction", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="segment a word list into a lexicon TSV")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--words", required=True, help="word list (or TSV; first column)")
    p.add_argument("--output", required=True, help="lexicon TSV path")
    p.set_defaults(func=_cmd_predict)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
