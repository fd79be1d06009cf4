"""Command-line interface binding all pipeline pieces.

Subcommands: ingest, transform, train, eval, similarity, cross-check.
Flag values override config-file values. Exit codes: 0 success,
1 usage/config error, 2 data error, 3 internal error. The environment
variable JSSTYLO_DATASET_ROOT supplies a default --corpus root.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from jsstylo import classifiers, evaluation, similarity
from jsstylo.corpus import (
    Corpus,
    CorpusError,
    deduplicate,
    load_corpus,
    save_corpus,
    syntax_check,
)
from jsstylo.evaluation import ExperimentConfig, ExperimentError
from jsstylo.features import Vocabulary
from jsstylo.jsfront.parser import ParseError
from jsstylo.jsfront.transform import mangle, minify

DATASET_ROOT_ENV = "JSSTYLO_DATASET_ROOT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    pass


def _default_corpus(args) -> str:
    if args.corpus:
        return args.corpus
    root = os.environ.get(DATASET_ROOT_ENV)
    if root:
        return root
    raise UsageError(f"--corpus is required (or set ${DATASET_ROOT_ENV})")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_ingest(args) -> int:
    corpus = load_corpus(_default_corpus(args), args.variant)
    parse_failures = []
    kept = []
    for index, sample in enumerate(corpus):
        if sample.variant in ("original", "minified", "mangled", "deobfuscated"):
            if not syntax_check(sample):
                parse_failures.append({"index": index, "id": sample.id})
                continue
        kept.append(sample)
    checked = Corpus(tuple(kept))
    deduped = deduplicate(checked)

    out = _out_dir(args)
    save_corpus(deduped, out / "corpus.jsonl")
    per_label = {label: 0 for label in deduped.label_set}
    for sample in deduped:
        per_label[sample.model_label] += 1
    summary = {
        "input_records": len(corpus),
        "parse_failures": parse_failures,
        "duplicates_removed": len(checked) - len(deduped),
        "kept": len(deduped),
        "per_label": per_label,
    }
    (out / "ingest_summary.json").write_text(json.dumps(summary, indent=2))
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_transform(args) -> int:
    corpus = load_corpus(_default_corpus(args), args.variant)
    op = {"minify": minify, "mangle": mangle}[args.op]
    target_variant = "minified" if args.op == "minify" else "mangled"
    transformed = []
    for sample in corpus:
        try:
            new_source = op(sample.source)
        except (ParseError, RuntimeError) as err:
            raise CorpusError(f"cannot {args.op} sample {sample.id}: {err}") from err
        transformed.append(
            type(sample)(
                id=sample.id,
                model_label=sample.model_label,
                task_id=sample.task_id,
                variant=target_variant,
                source=new_source,
                extra=sample.extra,
            )
        )
    out = _out_dir(args)
    save_corpus(Corpus(tuple(transformed)), out / f"corpus_{target_variant}.jsonl")
    print(f"wrote {len(transformed)} {target_variant} samples")
    return EXIT_OK


def _experiment_config(args) -> ExperimentConfig:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as err:
            raise UsageError(f"cannot read config {args.config}: {err}") from err
    if args.corpus or os.environ.get(DATASET_ROOT_ENV):
        if args.corpus or "corpus_path" not in data:
            data["corpus_path"] = _default_corpus(args)
    if args.variant:
        data["variant"] = args.variant
    if args.classes:
        data["classes"] = args.classes.split(",")
    if args.algo:
        data["algorithm"] = args.algo
    if args.seed is not None:
        data["seed"] = args.seed
    if args.out:
        data["output_dir"] = args.out
    try:
        return ExperimentConfig.from_dict(data)
    except (ValueError, TypeError) as err:
        raise UsageError(str(err)) from err


def cmd_train(args) -> int:
    config = _experiment_config(args)
    report = evaluation.run_experiment(config)
    print(evaluation.format_eval_table([(config.algorithm, report)]))
    return EXIT_OK


def cmd_eval(args) -> int:
    # Alias of train: the experiment runner both fits and evaluates.
    return cmd_train(args)


def cmd_similarity(args) -> int:
    if not args.classes:
        raise UsageError("--classes is required for similarity")
    corpus = load_corpus(_default_corpus(args), args.variant)
    report = similarity.diversity_report(
        corpus,
        models=args.classes.split(","),
        seed=args.seed if args.seed is not None else 0,
        max_pairs_per_cell=args.max_pairs,
    )
    out = _out_dir(args)
    report.save(out / "similarity_report.json")
    print(report.format_table())
    return EXIT_OK


def cmd_cross_check(args) -> int:
    model, vocab_json = classifiers.load_model(args.model)
    if vocab_json is None:
        raise UsageError(f"model file {args.model} carries no vocabulary")
    vocabulary = Vocabulary.from_json(vocab_json)
    external = load_corpus(_default_corpus(args), args.variant)
    report = evaluation.cross_validate_external(model, vocabulary, external)
    out = _out_dir(args)
    report.save(out / "cross_check_report.json")
    print(evaluation.format_eval_table([(f"{model.algorithm} (cross-check)", report)]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jsstylo",
        description="Stylometric attribution and diversity analysis for LLM-generated JavaScript",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, variant_default=None):
        p.add_argument("--corpus", help=f"corpus file/dir (default: ${DATASET_ROOT_ENV})")
        p.add_argument("--variant", default=variant_default, help="dataset variant tag")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default="out", help="output directory")

    p = sub.add_parser("ingest", help="load, syntax-check, dedup, write normalized corpus")
    common(p, variant_default="original")
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("transform", help="minify or mangle a corpus")
    common(p, variant_default="original")
    p.add_argument("--op", choices=("minify", "mangle"), required=True)
    p.set_defaults(fn=cmd_transform)

    for name, fn in (("train", cmd_train), ("eval", cmd_eval)):
        p = sub.add_parser(name, help="run the attribution pipeline end to end")
        common(p)
        p.add_argument("--classes", help="comma-separated model labels")
        p.add_argument("--algo", choices=classifiers.ALGORITHMS)
        p.add_argument("--config", help="experiment config JSON; flags override")
        p.set_defaults(fn=fn)

    p = sub.add_parser("similarity", help="intra/inter-model similarity report")
    common(p, variant_default="original")
    p.add_argument("--classes", help="comma-separated model labels")
    p.add_argument("--max-pairs", type=int, default=None, help="pair sample cap per cell")
    p.set_defaults(fn=cmd_similarity)

    p = sub.add_parser("cross-check", help="evaluate a saved model on an external corpus")
    common(p, variant_default="original")
    p.add_argument("--model", required=True, help="saved model file")
    p.set_defaults(fn=cmd_cross_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ExperimentError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA if err.stage in ("load", "filter", "dedup", "split") else EXIT_INTERNAL
    except (CorpusError, ParseError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    except Exception as err:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
