"""Attribution metrics, experiment orchestration, and report serialization.

Metrics come straight off the confusion matrix (rows = true labels,
columns = predicted, lexicographic label order): accuracy is the trace
over the total, precision/F1 are macro-averaged with the convention that
a class nobody predicted contributes precision 0. Training time is the
wall-clock of `fit` only.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from jsstylo import classifiers, features
from jsstylo.classifiers import ClassifierSpec, TrainedModel
from jsstylo.corpus import Corpus, deduplicate, load_corpus, stratified_split
from jsstylo.features import Vocabulary, build_vocabulary, vectorize

REPORT_FORMAT_VERSION = 1


class ExperimentError(RuntimeError):
    """Pipeline failure annotated with the stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    macro_precision: float
    macro_f1: float
    train_time: float
    confusion: tuple[tuple[int, ...], ...]  # rows true, cols predicted
    labels: tuple[str, ...]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "format_version": REPORT_FORMAT_VERSION,
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_f1": self.macro_f1,
            "train_time_s": self.train_time,
            "labels": list(self.labels),
            "confusion": [list(row) for row in self.confusion],
            "metadata": self.metadata,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2), encoding="utf-8")

    def confusion_csv(self) -> str:
        lines = ["true\\predicted," + ",".join(self.labels)]
        for label, row in zip(self.labels, self.confusion):
            lines.append(label + "," + ",".join(str(v) for v in row))
        return "\n".join(lines) + "\n"


def confusion_matrix(y_true, y_pred, labels: tuple[str, ...]) -> np.ndarray:
    index = {label: i for i, label in enumerate(labels)}
    matrix = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        matrix[index[t], index[p]] += 1
    return matrix


def metrics_from_confusion(matrix: np.ndarray) -> tuple[float, float, float]:
    """(accuracy, macro precision, macro F1); zero-denominator classes score 0."""
    total = matrix.sum()
    accuracy = float(np.trace(matrix)) / total if total else 0.0
    diag = np.diag(matrix).astype(np.float64)
    col_sums = matrix.sum(axis=0).astype(np.float64)
    row_sums = matrix.sum(axis=1).astype(np.float64)
    precision = np.divide(diag, col_sums, out=np.zeros_like(diag), where=col_sums > 0)
    recall = np.divide(diag, row_sums, out=np.zeros_like(diag), where=row_sums > 0)
    pr_sum = precision + recall
    f1 = np.divide(2 * precision * recall, pr_sum, out=np.zeros_like(diag), where=pr_sum > 0)
    return accuracy, float(precision.mean()), float(f1.mean())


def evaluate(model: TrainedModel, X_valid, y_valid, metadata: dict | None = None) -> EvalReport:
    """Score a trained model on a validation set."""
    y_valid = np.asarray(y_valid)
    unseen = sorted(set(y_valid.tolist()) - set(model.label_order))
    if unseen:
        raise ValueError(f"validation labels not seen in training: {unseen}")
    y_pred = classifiers.predict(model, X_valid)
    matrix = confusion_matrix(y_valid, y_pred, model.label_order)
    accuracy, macro_precision, macro_f1 = metrics_from_confusion(matrix)
    return EvalReport(
        accuracy=accuracy,
        macro_precision=macro_precision,
        macro_f1=macro_f1,
        train_time=model.train_time,
        confusion=tuple(tuple(int(v) for v in row) for row in matrix),
        labels=model.label_order,
        metadata=metadata or {},
    )


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_path: str
    variant: str
    classes: tuple[str, ...]
    algorithm: str
    seed: int = 42
    split_ratio: str = "4/5"
    vocabulary_cap: int = features.VOCABULARY_CAP
    output_dir: str | None = None
    hyperparameters: dict = field(default_factory=dict)

    _FIELDS = (
        "corpus_path",
        "variant",
        "classes",
        "algorithm",
        "seed",
        "split_ratio",
        "vocabulary_cap",
        "output_dir",
        "hyperparameters",
    )

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        unknown = set(data) - set(cls._FIELDS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        missing = {"corpus_path", "variant", "classes", "algorithm"} - set(data)
        if missing:
            raise ValueError(f"missing config keys: {sorted(missing)}")
        data = dict(data)
        data["classes"] = tuple(data["classes"])
        return cls(**data)

    def to_dict(self) -> dict:
        return {
            "corpus_path": self.corpus_path,
            "variant": self.variant,
            "classes": list(self.classes),
            "algorithm": self.algorithm,
            "seed": self.seed,
            "split_ratio": self.split_ratio,
            "vocabulary_cap": self.vocabulary_cap,
            "output_dir": self.output_dir,
            "hyperparameters": self.hyperparameters,
        }


def corpus_digest(corpus: Corpus) -> str:
    digest = hashlib.sha256()
    for sample in corpus:
        digest.update(sample.id.encode())
        digest.update(hashlib.sha256(sample.source.encode()).digest())
    return digest.hexdigest()


def run_experiment(config: ExperimentConfig) -> EvalReport:
    """End to end: load, dedup, split, vocab (train only), vectorize,
    fit, evaluate; persists the report and model when output_dir is set."""

    def stage(name: str, fn):
        try:
            return fn()
        except Exception as err:
            raise ExperimentError(name, err) from err

    corpus = stage("load", lambda: load_corpus(config.corpus_path, config.variant))

    def filter_classes():
        missing = sorted(set(config.classes) - set(corpus.label_set))
        if missing:
            raise ValueError(f"requested classes not in corpus: {missing}")
        return corpus.filter(labels=config.classes)

    corpus = stage("filter", filter_classes)
    corpus = stage("dedup", lambda: deduplicate(corpus))
    split = stage(
        "split", lambda: stratified_split(corpus, Fraction(config.split_ratio), config.seed)
    )
    # Tokenize once; the vocabulary build and both vectorizations reuse it.
    train_docs = stage(
        "tokenize", lambda: [features.feature_tokens(s.source) for s in split.train]
    )
    valid_docs = stage(
        "tokenize", lambda: [features.feature_tokens(s.source) for s in split.valid]
    )
    vocab = stage(
        "vocabulary", lambda: build_vocabulary(train_docs, cap=config.vocabulary_cap)
    )
    X_train = stage("vectorize", lambda: vectorize(train_docs, vocab))
    X_valid = stage("vectorize", lambda: vectorize(valid_docs, vocab))
    y_train = [s.model_label for s in split.train]
    y_valid = [s.model_label for s in split.valid]
    spec = ClassifierSpec(config.algorithm, config.seed, config.hyperparameters)
    model = stage("fit", lambda: classifiers.fit(spec, X_train, y_train))

    metadata = {
        "config": config.to_dict(),
        "dataset_digest": corpus_digest(corpus),
        "train_size": len(split.train),
        "valid_size": len(split.valid),
        "vocabulary_size": len(vocab),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    report = stage("evaluate", lambda: evaluate(model, X_valid, y_valid, metadata))

    if config.output_dir is not None:
        out = Path(config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        tag = f"{config.algorithm}_{config.variant}_{len(config.classes)}class"
        stage("persist", lambda: report.save(out / f"report_{tag}.json"))
        stage(
            "persist",
            lambda: (out / f"confusion_{tag}.csv").write_text(report.confusion_csv()),
        )
        stage(
            "persist",
            lambda: classifiers.save_model(model, out / f"model_{tag}.pkl", vocab.to_json()),
        )
    return report


def cross_validate_external(
    model: TrainedModel, vocabulary: Vocabulary, external: Corpus, metadata: dict | None = None
) -> EvalReport:
    """Evaluate a trained model on an independently generated corpus, no refit."""
    labels = sorted({s.model_label for s in external})
    unknown = sorted(set(labels) - set(model.label_order))
    if unknown:
        raise ValueError(f"external corpus has labels outside the model's label set: {unknown}")
    X = vectorize(external, vocabulary)
    y = [s.model_label for s in external]
    meta = {"external_size": len(external), **(metadata or {})}
    return evaluate(model, X, y, meta)


def format_eval_table(rows: list[tuple[str, EvalReport]]) -> str:
    """Rows of (display name, report) in the attribution-table layout."""
    header = f"{'Model Name':<22}{'Acc(%)':>9}{'Prec(%)':>9}{'F1':>8}{'Time':>9}"
    lines = [header, "-" * len(header)]
    for name, report in rows:
        minutes, seconds = divmod(report.train_time, 60)
        lines.append(
            f"{name:<22}{report.accuracy * 100:>9.2f}{report.macro_precision * 100:>9.2f}"
            f"{report.macro_f1 * 100:>8.2f}{f'{int(minutes):02d}:{seconds:05.2f}':>9}"
        )
    return "\n".join(lines)
