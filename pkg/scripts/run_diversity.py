#!/usr/bin/env python3
"""Print the intra/inter-model similarity table (n-gram, syntax, dataflow
medians and the gap) for a labeled corpus.

Example:
    python scripts/run_diversity.py --corpus demo/corpus.jsonl \
        --models gemini-2.5-flash-lite,gpt-4o,gpt-5-mini --max-pairs 500
"""

import argparse
import os

from jsstylo.corpus import load_corpus
from jsstylo.similarity import diversity_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=os.environ.get("JSSTYLO_DATASET_ROOT"))
    parser.add_argument("--variant", default="original")
    parser.add_argument("--models", required=True, help="comma-separated model labels")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-pairs", type=int, default=None,
                        help="sample cap per model-pair cell")
    parser.add_argument("--json-out", default=None)
    args = parser.parse_args()
    if not args.corpus:
        parser.error("--corpus required (or set $JSSTYLO_DATASET_ROOT)")

    corpus = load_corpus(args.corpus, args.variant)
    report = diversity_report(
        corpus, args.models.split(","), seed=args.seed, max_pairs_per_cell=args.max_pairs
    )
    print(report.format_table())
    if args.json_out:
        report.save(args.json_out)
        print(f"\nreport written to {args.json_out}")


if __name__ == "__main__":
    main()
