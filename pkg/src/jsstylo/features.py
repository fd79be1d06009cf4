"""Capped token vocabulary and TF-IDF feature vectors.

Vocabulary selection ranks token texts by document frequency over the
training corpus (ties broken lexicographically) and keeps the top 400.
Weights are raw term frequency times smoothed idf,
``idf = ln((1 + N) / (1 + df)) + 1``, then L2-normalized per document.

String, template, and numeric literals are replaced by the placeholder
tokens STR/TPL/NUM by default so generated data values do not flood the
vocabulary; pass ``literal_placeholders=False`` to keep raw literal text.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from jsstylo.corpus import Corpus
from jsstylo.jsfront import lexer
from jsstylo.jsfront.lexer import tokenize

VOCABULARY_CAP = 400

_PLACEHOLDERS = {
    lexer.STRING: "STR",
    lexer.TEMPLATE: "TPL",
    lexer.NUMERIC: "NUM",
    lexer.BIGINT: "NUM",
}


def feature_tokens(source: str, literal_placeholders: bool = True) -> list[str]:
    """Token texts used as TF-IDF terms."""
    out = []
    for tok in tokenize(source):
        if literal_placeholders and tok.kind in _PLACEHOLDERS:
            out.append(_PLACEHOLDERS[tok.kind])
        else:
            out.append(tok.text)
    return out


@dataclass(frozen=True)
class Vocabulary:
    entries: tuple[tuple[str, int], ...]  # (token text, document frequency)
    corpus_size: int
    literal_placeholders: bool = True

    @property
    def index(self) -> dict[str, int]:
        return {text: col for col, (text, _) in enumerate(self.entries)}

    def __len__(self) -> int:
        return len(self.entries)

    def idf(self) -> np.ndarray:
        df = np.array([d for _, d in self.entries], dtype=np.float64)
        return np.log((1.0 + self.corpus_size) / (1.0 + df)) + 1.0

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "corpus_size": self.corpus_size,
            "literal_placeholders": self.literal_placeholders,
            "entries": [[text, df] for text, df in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Vocabulary":
        if data.get("format_version") != 1:
            raise ValueError(f"unsupported vocabulary format_version: {data.get('format_version')}")
        return cls(
            entries=tuple((text, df) for text, df in data["entries"]),
            corpus_size=data["corpus_size"],
            literal_placeholders=data.get("literal_placeholders", True),
        )


@dataclass(frozen=True)
class FeatureVector:
    columns: tuple[int, ...]
    weights: tuple[float, ...]
    dimension: int

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dimension)
        dense[list(self.columns)] = self.weights
        return dense


def build_vocabulary(
    train: Corpus | Iterable[Sequence[str]],
    cap: int = VOCABULARY_CAP,
    literal_placeholders: bool = True,
) -> Vocabulary:
    """Top-`cap` tokens by document frequency over the training documents.

    Accepts a Corpus (samples are tokenized) or pre-tokenized documents.
    """
    if isinstance(train, Corpus):
        documents = [feature_tokens(s.source, literal_placeholders) for s in train]
    else:
        documents = [list(doc) for doc in train]
    if not documents:
        raise ValueError("cannot build a vocabulary from an empty corpus")

    df_counts: Counter[str] = Counter()
    for doc in documents:
        df_counts.update(set(doc))

    ranked = sorted(df_counts.items(), key=lambda item: (-item[1], item[0]))
    return Vocabulary(
        entries=tuple(ranked[:cap]),
        corpus_size=len(documents),
        literal_placeholders=literal_placeholders,
    )


def tfidf(tokens_or_source, vocabulary: Vocabulary) -> FeatureVector:
    """TF-IDF vector for one document; zero vector if nothing is in-vocabulary."""
    if isinstance(tokens_or_source, str):
        tokens = feature_tokens(tokens_or_source, vocabulary.literal_placeholders)
    else:
        tokens = tokens_or_source
    index = vocabulary.index
    counts: Counter[int] = Counter()
    for token in tokens:
        col = index.get(token)
        if col is not None:
            counts[col] += 1
    if not counts:
        return FeatureVector((), (), len(vocabulary))

    columns = sorted(counts)
    n = vocabulary.corpus_size
    weights = []
    for col in columns:
        df = vocabulary.entries[col][1]
        idf = math.log((1.0 + n) / (1.0 + df)) + 1.0
        weights.append(counts[col] * idf)
    norm = math.sqrt(sum(w * w for w in weights))
    return FeatureVector(tuple(columns), tuple(w / norm for w in weights), len(vocabulary))


def vectorize(corpus: Corpus | Iterable[Sequence[str]], vocabulary: Vocabulary) -> sparse.csr_matrix:
    """TF-IDF matrix (documents x vocabulary), rows L2-normalized."""
    if isinstance(corpus, Corpus):
        documents = (feature_tokens(s.source, vocabulary.literal_placeholders) for s in corpus)
    else:
        documents = corpus
    index = vocabulary.index
    idf = vocabulary.idf()

    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    for doc in documents:
        counts: Counter[int] = Counter()
        for token in doc:
            col = index.get(token)
            if col is not None:
                counts[col] += 1
        cols = sorted(counts)
        row = np.array([counts[c] * idf[c] for c in cols])
        norm = np.linalg.norm(row)
        if norm > 0:
            row = row / norm
        data.extend(row)
        indices.extend(cols)
        indptr.append(len(indices))

    matrix = sparse.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int32), np.array(indptr, dtype=np.int32)),
        shape=(len(indptr) - 1, len(vocabulary)),
    )
    return matrix


def save_vocabulary(vocabulary: Vocabulary, path: str | Path) -> None:
    Path(path).write_text(json.dumps(vocabulary.to_json(), indent=2), encoding="utf-8")


def load_vocabulary(path: str | Path) -> Vocabulary:
    return Vocabulary.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def export_dense_csv(matrix: sparse.csr_matrix, vocabulary: Vocabulary, path: str | Path) -> None:
    """Debug export: dense CSV with one header row of vocabulary tokens."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        header = ",".join(json.dumps(text) for text, _ in vocabulary.entries)
        fh.write(header + "\n")
        for row in matrix.toarray():
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")
