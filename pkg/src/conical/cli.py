"""Command-line interface.

Subcommands:
    train    fit a model on a one-document-per-line positive corpus
    predict  label documents with a trained model
    eval     run the one-vs-all evaluation protocol on a labeled JSONL file
    weights  inspect the top-weighted vocabulary terms of a corpus

All output is UTF-8 with LF line endings and period decimal separators.
Every failure exits with status 1 and a message on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .classifier import ConicalClassifier
from .evaluate import LabeledDataset, SplitSpec, run_evaluation
from .model_io import ConicalModel
from .text import read_corpus_lines
from .vectorizer import WEIGHTING_SCHEMES, TopicVectorizer
from .weighting import DEFAULT_EPSILON, load_frequency_table


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def cmd_train(args) -> int:
    corpus = read_corpus_lines(args.corpus)
    table = load_frequency_table(args.lexicon)
    vec = TopicVectorizer(epsilon=args.epsilon, word_frequencies=table)
    vec.fit(corpus)
    clf = ConicalClassifier().fit(vec.transform(corpus))
    model = ConicalModel.from_fitted(vec, clf)
    model.save(args.out)
    print(f"model written to {args.out}")
    print(f"documents: {len(corpus)}")
    print(f"vocabulary size: {len(model.terms)}")
    print(f"bounded-below dimensions: {len(model.min_vector)}")
    return 0


def cmd_predict(args) -> int:
    model = ConicalModel.load(args.model)
    vec = model.vectorizer()
    clf = model.classifier()
    docs = read_corpus_lines(args.docs)
    for i, text in enumerate(docs):
        pred = clf.predict_one(vec.transform_one(text))
        print(f"{i}\t{pred.label}\t{pred.dims_checked}")
    return 0


def cmd_eval(args) -> int:
    ds = LabeledDataset.from_jsonl(args.data, args.positive_label)
    if args.positive_label not in ds.labels:
        raise ValueError(f"positive label {args.positive_label!r} not present in {args.data}")
    table = load_frequency_table(args.lexicon) if args.lexicon else None
    report = run_evaluation(
        ds,
        SplitSpec(seed=args.seed),
        repetitions=args.repetitions,
        weighting=args.weighting,
        word_frequencies=table,
        epsilon=args.epsilon,
    )
    print(f"dataset: {args.data}")
    print(f"positive label: {args.positive_label}")
    print(f"weighting: {report.weighting}, repetitions: {report.repetitions}, seed: {args.seed}")
    print(report.table())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            for run in report.runs:
                fh.write(_dump(run.record()) + "\n")
            fh.write(_dump(report.summary_record()) + "\n")
        print(f"report written to {args.out}")
    return 0


def cmd_weights(args) -> int:
    corpus = read_corpus_lines(args.corpus)
    table = load_frequency_table(args.lexicon)
    vec = TopicVectorizer(epsilon=args.epsilon, word_frequencies=table)
    vec.fit(corpus)
    print("term\ttpr\tfreq\tscore")
    for term, tpr, freq, score in vec.top_terms(args.top_k):
        print(f"{term}\t{tpr:.6f}\t{freq:.8f}\t{score:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conical",
        description="One-class topic classification over weighted bag-of-words vectors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="fit a model on a positive corpus")
    train.add_argument("--corpus", required=True, help="one document per line, UTF-8")
    train.add_argument("--lexicon", required=True,
                       help="word-frequency table (term<TAB>count per line)")
    train.add_argument("--out", required=True, help="output model path")
    train.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    train.set_defaults(func=cmd_train)

    predict = sub.add_parser("predict", help="label documents with a trained model")
    predict.add_argument("--model", required=True)
    predict.add_argument("--docs", required=True, help="one document per line, UTF-8")
    predict.set_defaults(func=cmd_predict)

    ev = sub.add_parser("eval", help="run the one-vs-all evaluation protocol")
    ev.add_argument("--data", required=True, help="JSONL with 'text' and 'label' fields")
    ev.add_argument("--positive-label", required=True)
    ev.add_argument("--lexicon", default=None)
    ev.add_argument("--repetitions", type=int, default=20)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--weighting", default="ne-tf",
                    help="one of: " + ", ".join(WEIGHTING_SCHEMES))
    ev.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    ev.add_argument("--out", default=None, help="write per-run and summary JSONL here")
    ev.set_defaults(func=cmd_eval)

    weights = sub.add_parser("weights", help="show top-weighted vocabulary terms")
    weights.add_argument("--corpus", required=True)
    weights.add_argument("--lexicon", required=True)
    weights.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    weights.add_argument("--top-k", type=int, default=20)
    weights.set_defaults(func=cmd_weights)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
