#!/usr/bin/env python3
"""Run the five traditional classifiers on one corpus/variant and print
an attribution table (accuracy, macro precision, macro F1, fit time).

Example (demo corpus):
    python scripts/make_demo_corpus.py --tasks 30 --out demo/corpus.jsonl
    python scripts/run_attribution.py --corpus demo/corpus.jsonl \
        --classes gpt-4.1,gpt-4o,gpt-4o-mini,gpt-5-mini,gpt-oss-120b
"""

import argparse
import os
from fractions import Fraction

from jsstylo.classifiers import ALGORITHMS, ClassifierSpec, fit
from jsstylo.corpus import deduplicate, load_corpus, stratified_split
from jsstylo.evaluation import evaluate, format_eval_table
from jsstylo.features import build_vocabulary, vectorize


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=os.environ.get("JSSTYLO_DATASET_ROOT"))
    parser.add_argument("--variant", default="original")
    parser.add_argument("--classes", required=True, help="comma-separated model labels")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--ratio", default="4/5")
    args = parser.parse_args()
    if not args.corpus:
        parser.error("--corpus required (or set $JSSTYLO_DATASET_ROOT)")

    labels = args.classes.split(",")
    loaded = load_corpus(args.corpus, args.variant)
    missing = sorted(set(labels) - set(loaded.label_set))
    if missing:
        parser.error(f"classes not present in corpus: {missing} (have {list(loaded.label_set)})")
    corpus = deduplicate(loaded.filter(labels=labels))
    split = stratified_split(corpus, Fraction(args.ratio), args.seed)
    vocab = build_vocabulary(split.train)
    X_train, X_valid = vectorize(split.train, vocab), vectorize(split.valid, vocab)
    y_train = [s.model_label for s in split.train]
    y_valid = [s.model_label for s in split.valid]

    print(f"{len(labels)}-class attribution on {args.variant} "
          f"({len(split.train)} train / {len(split.valid)} valid, seed {args.seed})\n")
    rows = []
    for algorithm in ALGORITHMS:
        model = fit(ClassifierSpec(algorithm, args.seed), X_train, y_train)
        rows.append((algorithm, evaluate(model, X_valid, y_valid)))
    rows.sort(key=lambda r: -r[1].accuracy)
    print(format_eval_table(rows))


if __name__ == "__main__":
    main()
