"""The five traditional classifiers with fixed defaults and seeded training.

Algorithms and their pinned hyperparameters:
  knn            5 neighbors, Euclidean over the L2-normalized vectors
  logreg         multinomial softmax, L2 penalty C=1.0, tol 1e-4, 2000 iters
  linear_svm     one-vs-rest hinge loss, C=1.0, tol 1e-4, 2000 iters
  random_forest  400 trees, Gini, sqrt(d) features/split, unlimited depth
  gboost         softmax boosting, rate 0.3, depth 6, 400 rounds

Training is deterministic given (seed, data, order). Class order is the
lexicographic label order everywhere. Prediction ties resolve to the
smallest label index.
"""

from __future__ import annotations

import pickle
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from scipy import sparse
from sklearn.ensemble import HistGradientBoostingClassifier, RandomForestClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.neighbors import KNeighborsClassifier
from sklearn.svm import LinearSVC

ALGORITHMS = ("knn", "logreg", "linear_svm", "random_forest", "gboost")

MODEL_FORMAT_VERSION = 1

_DEFAULTS: dict[str, dict[str, Any]] = {
    "knn": {"neighbors": 5},
    "logreg": {"max_iter": 2000, "c": 1.0, "tol": 1e-4},
    "linear_svm": {"max_iter": 2000, "c": 1.0, "tol": 1e-4},
    "random_forest": {"trees": 400},
    "gboost": {"estimators": 400, "learning_rate": 0.3, "max_depth": 6},
}


@dataclass(frozen=True)
class ClassifierSpec:
    algorithm: str
    seed: int = 42
    hyperparameters: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        unknown = set(self.hyperparameters) - set(_DEFAULTS[self.algorithm])
        if unknown:
            raise ValueError(f"unknown hyperparameters for {self.algorithm}: {sorted(unknown)}")

    def resolved(self) -> dict[str, Any]:
        return {**_DEFAULTS[self.algorithm], **self.hyperparameters}


@dataclass
class TrainedModel:
    algorithm: str
    hyperparameters: dict[str, Any]
    seed: int
    label_order: tuple[str, ...]
    dimension: int
    estimator: Any
    train_time: float  # seconds of wall-clock fit


def _build_estimator(spec: ClassifierSpec):
    params = spec.resolved()
    if spec.algorithm == "knn":
        return KNeighborsClassifier(
            n_neighbors=params["neighbors"], metric="euclidean", algorithm="brute"
        )
    if spec.algorithm == "logreg":
        return LogisticRegression(
            C=params["c"], tol=params["tol"], max_iter=params["max_iter"]
        )
    if spec.algorithm == "linear_svm":
        return LinearSVC(
            C=params["c"],
            loss="hinge",
            dual=True,
            tol=params["tol"],
            max_iter=params["max_iter"],
            random_state=spec.seed,
        )
    if spec.algorithm == "random_forest":
        return RandomForestClassifier(
            n_estimators=params["trees"],
            criterion="gini",
            max_features="sqrt",
            max_depth=None,
            min_samples_split=2,
            random_state=spec.seed,
            n_jobs=-1,
        )
    if spec.algorithm == "gboost":
        return HistGradientBoostingClassifier(
            max_iter=params["estimators"],
            learning_rate=params["learning_rate"],
            max_depth=params["max_depth"],
            min_samples_leaf=1,  # boosted-tree convention: leaves down to one sample
            early_stopping=False,
            random_state=spec.seed,
        )
    raise AssertionError(spec.algorithm)


def _as_input(algorithm: str, X):
    if sparse.issparse(X):
        # The histogram booster has no sparse path; 400 columns is cheap dense.
        return X.toarray() if algorithm == "gboost" else X
    return np.asarray(X)


def fit(spec: ClassifierSpec, X, y) -> TrainedModel:
    """Train one classifier; deterministic for fixed (seed, data, order)."""
    y = np.asarray(y)
    n_rows = X.shape[0]
    if n_rows != len(y):
        raise ValueError(f"X has {n_rows} rows but y has {len(y)} labels")
    labels = tuple(sorted(set(y.tolist())))
    if len(labels) < 2:
        raise ValueError("training data must contain at least 2 distinct labels")

    estimator = _build_estimator(spec)
    X_in = _as_input(spec.algorithm, X)
    start = time.perf_counter()
    estimator.fit(X_in, y)
    elapsed = time.perf_counter() - start

    return TrainedModel(
        algorithm=spec.algorithm,
        hyperparameters=spec.resolved(),
        seed=spec.seed,
        label_order=labels,
        dimension=X.shape[1],
        estimator=estimator,
        train_time=elapsed,
    )


def predict(model: TrainedModel, X) -> np.ndarray:
    """One label per row; always a label from the training label set."""
    if X.shape[1] != model.dimension:
        raise ValueError(
            f"feature dimension {X.shape[1]} does not match training dimension {model.dimension}"
        )
    X_in = _as_input(model.algorithm, X)
    return np.asarray(model.estimator.predict(X_in))


def save_model(model: TrainedModel, path: str | Path, vocabulary_json: dict | None = None) -> None:
    """Versioned pickle container; `vocabulary_json` rides along for pipelines."""
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "algorithm": model.algorithm,
        "hyperparameters": model.hyperparameters,
        "seed": model.seed,
        "label_order": list(model.label_order),
        "dimension": model.dimension,
        "train_time": model.train_time,
        "estimator": model.estimator,
        "vocabulary": vocabulary_json,
    }
    with Path(path).open("wb") as fh:
        pickle.dump(payload, fh)


def load_model(path: str | Path) -> tuple[TrainedModel, dict | None]:
    with Path(path).open("rb") as fh:
        payload = pickle.load(fh)
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(
            f"unsupported model format_version {version!r}; expected {MODEL_FORMAT_VERSION}"
        )
    model = TrainedModel(
        algorithm=payload["algorithm"],
        hyperparameters=payload["hyperparameters"],
        seed=payload["seed"],
        label_order=tuple(payload["label_order"]),
        dimension=payload["dimension"],
        estimator=payload["estimator"],
        train_time=payload["train_time"],
    )
    return model, payload.get("vocabulary")
