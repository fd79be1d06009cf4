#!/usr/bin/env python3
"""Generate the style-controlled demo corpus as a JSON Lines file.

Example:
    python scripts/make_demo_corpus.py --models gpt-4o,gpt-5-mini,gemini-2.5-flash-lite \
        --tasks 25 --repeats 10 --out demo/corpus.jsonl
"""

import argparse

from jsstylo.corpus import save_corpus
from jsstylo.synthgen import DEFAULT_MODELS, make_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", default=",".join(DEFAULT_MODELS[:5]),
                        help="comma-separated model labels")
    parser.add_argument("--tasks", type=int, default=25)
    parser.add_argument("--repeats", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    models = args.models.split(",")
    corpus = make_corpus(models=models, n_tasks=args.tasks, repeats=args.repeats, seed=args.seed)
    save_corpus(corpus, args.out)
    print(f"wrote {len(corpus)} samples ({len(models)} models x {args.tasks} tasks "
          f"x {args.repeats} repeats) to {args.out}")


if __name__ == "__main__":
    main()
