"""Pairwise code similarity: n-gram, syntax-subtree, and dataflow overlap,
plus the intra/inter-model median analysis over a labeled corpus.

- ngram_match: BLEU over token texts, orders 1..4, uniform weights,
  add-one smoothing for orders with zero matches, brevity penalty.
- syntax_match: fraction of the candidate's subtrees (each node with its
  full descendant kind structure, identifier text excluded) that occur
  among the reference's subtrees, multiset-clipped.
- dataflow_match: Jaccard over normalized def-use edges; two empty edge
  sets count as fully similar.

The report pairs samples of the same task only: intra-model cells pair a
model's repeated implementations, inter-model cells pair implementations
across models. Directional metrics are symmetrized by averaging the two
directions; medians are over raw pair scores.
"""

from __future__ import annotations

import json
import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from jsstylo.corpus import Corpus
from jsstylo.jsfront.dataflow import DataflowEdgeSet, dataflow_edges
from jsstylo.jsfront.jsast import Node, SyntaxTree
from jsstylo.jsfront.lexer import TokenStream, tokenize
from jsstylo.jsfront.parser import parse

COMPONENTS = ("ngram", "syntax", "dataflow")
MAX_NGRAM_ORDER = 4


@dataclass(frozen=True)
class SimilarityScore:
    ngram: float
    syntax: float
    dataflow: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.ngram, self.syntax, self.dataflow)


# -- n-gram match --


def _ngram_counts(texts: list[str], n: int) -> Counter:
    return Counter(tuple(texts[i : i + n]) for i in range(len(texts) - n + 1))


def ngram_match(cand: TokenStream, ref: TokenStream) -> float:
    """BLEU-style geometric mean of modified n-gram precisions, n = 1..4."""
    cand_texts = [t.text for t in cand]
    ref_texts = [t.text for t in ref]
    if not cand_texts or not ref_texts:
        raise ValueError("ngram_match requires non-empty token streams")
    return _ngram_match_texts(cand_texts, ref_texts)


def _ngram_match_texts(
    cand_texts: list[str],
    ref_texts: list[str],
    cand_counters: list[Counter] | None = None,
    ref_counters: list[Counter] | None = None,
) -> float:
    c_len, r_len = len(cand_texts), len(ref_texts)
    max_order = min(MAX_NGRAM_ORDER, c_len)
    log_sum = 0.0
    for n in range(1, max_order + 1):
        cand_ngrams = cand_counters[n - 1] if cand_counters else _ngram_counts(cand_texts, n)
        ref_ngrams = ref_counters[n - 1] if ref_counters else _ngram_counts(ref_texts, n)
        total = sum(cand_ngrams.values())
        matched = sum(min(count, ref_ngrams.get(gram, 0)) for gram, count in cand_ngrams.items())
        if matched == 0:
            precision = (matched + 1.0) / (total + 1.0)
        else:
            precision = matched / total
        log_sum += math.log(precision)
    score = math.exp(log_sum / max_order)
    if c_len < r_len:
        score *= math.exp(1.0 - r_len / c_len)
    return score


# -- syntax match --


def subtree_serials(tree: SyntaxTree | Node) -> Counter:
    """Multiset of parenthesized-preorder kind serializations, one per node."""
    root = tree.root if isinstance(tree, SyntaxTree) else tree
    serials: Counter[str] = Counter()

    def serialize(node: Node) -> str:
        inner = ",".join(serialize(child) for child in node.children())
        serial = f"{node.kind}({inner})" if inner else node.kind
        serials[serial] += 1
        return serial

    serialize(root)
    return serials


def syntax_match(cand: SyntaxTree, ref: SyntaxTree) -> float:
    return _syntax_match_counts(subtree_serials(cand), subtree_serials(ref))


def _syntax_match_counts(cand_serials: Counter, ref_serials: Counter) -> float:
    total = sum(cand_serials.values())
    matched = sum(
        min(count, ref_serials.get(serial, 0)) for serial, count in cand_serials.items()
    )
    return matched / total if total else 0.0


# -- dataflow match --


def dataflow_match(cand: DataflowEdgeSet, ref: DataflowEdgeSet) -> float:
    return _jaccard(cand.edges, ref.edges)


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 1.0
    union = len(a | b)
    return len(a & b) / union


# -- per-sample featurization cache --


@dataclass(frozen=True)
class SampleFeatures:
    token_texts: tuple[str, ...]
    ngram_counters: tuple[Counter, ...]
    subtrees: Counter
    edges: frozenset

    @classmethod
    def from_source(cls, source: str) -> "SampleFeatures":
        texts = [t.text for t in tokenize(source)]
        tree = parse(source)
        return cls(
            token_texts=tuple(texts),
            ngram_counters=tuple(
                _ngram_counts(texts, n) for n in range(1, MAX_NGRAM_ORDER + 1)
            ),
            subtrees=subtree_serials(tree),
            edges=dataflow_edges(tree).edges,
        )


def pair_score(a: SampleFeatures, b: SampleFeatures) -> SimilarityScore:
    """Symmetrized component scores for one unordered pair."""
    texts_a, texts_b = list(a.token_texts), list(b.token_texts)
    ngram = 0.5 * (
        _ngram_match_texts(texts_a, texts_b, list(a.ngram_counters), list(b.ngram_counters))
        + _ngram_match_texts(texts_b, texts_a, list(b.ngram_counters), list(a.ngram_counters))
    )
    syntax = 0.5 * (
        _syntax_match_counts(a.subtrees, b.subtrees)
        + _syntax_match_counts(b.subtrees, a.subtrees)
    )
    dataflow = _jaccard(a.edges, b.edges)
    return SimilarityScore(ngram, syntax, dataflow)


# -- diversity report --


@dataclass(frozen=True)
class SimilarityReport:
    models: tuple[str, ...]
    cell_medians: dict[tuple[str, str], tuple[float, float, float]]
    pair_counts: dict[tuple[str, str], int]
    intra_avg: tuple[float, float, float]
    inter_avg: tuple[float, float, float]
    gap: tuple[float, float, float]
    seed: int
    max_pairs_per_cell: int | None

    def to_json(self) -> dict:
        return {
            "format_version": 1,
            "models": list(self.models),
            "components": list(COMPONENTS),
            "cells": [
                {
                    "pair": list(pair),
                    "medians": list(self.cell_medians[pair]),
                    "pair_count": self.pair_counts[pair],
                }
                for pair in sorted(self.cell_medians)
            ],
            "intra_avg": list(self.intra_avg),
            "inter_avg": list(self.inter_avg),
            "gap": list(self.gap),
            "seed": self.seed,
            "max_pairs_per_cell": self.max_pairs_per_cell,
        }

    def format_table(self) -> str:
        """Rows of intra cells, inter cells, averages, and the gap."""
        lines = []
        header = f"{'Model Pair':<42}{'N-gram':>9}{'Syntax':>9}{'Dataflow':>10}"
        lines.append(header)
        lines.append("-" * len(header))

        def row(name: str, values: Iterable[float]) -> str:
            ngram, syntax, dataflow = values
            return f"{name:<42}{ngram:>9.2f}{syntax:>9.2f}{dataflow:>10.2f}"

        lines.append("Intra-Model Comparisons")
        for pair in sorted(self.cell_medians):
            if pair[0] == pair[1]:
                lines.append(row(f"{pair[0]} x {pair[1]}", self.cell_medians[pair]))
        lines.append("Inter-Model Comparisons")
        for pair in sorted(self.cell_medians):
            if pair[0] != pair[1]:
                lines.append(row(f"{pair[0]} x {pair[1]}", self.cell_medians[pair]))
        lines.append("-" * len(header))
        lines.append(row("Intra-Model Avg.", self.intra_avg))
        lines.append(row("Inter-Model Avg.", self.inter_avg))
        lines.append(row("Gap", self.gap))
        return "\n".join(lines)

    def save(self, path) -> None:
        from pathlib import Path

        Path(path).write_text(json.dumps(self.to_json(), indent=2), encoding="utf-8")


def diversity_report(
    corpus: Corpus,
    models: list[str],
    pairing: str = "same_task",
    seed: int = 0,
    max_pairs_per_cell: int | None = None,
) -> SimilarityReport:
    """Median component similarities per model pair, plus the intra-inter gap.

    Intra pairs are unordered pairs among one model's implementations of a
    task; inter pairs cross two models on the same task. The self-pair of
    a sample with itself is never formed.
    """
    if pairing != "same_task":
        raise ValueError(f"unknown pairing {pairing!r}")
    if len(models) < 2:
        raise ValueError("diversity_report needs at least 2 models")

    by_model_task: dict[str, dict[int, list[int]]] = {m: {} for m in models}
    samples = [s for s in corpus if s.model_label in set(models)]
    features: list[SampleFeatures | None] = [None] * len(samples)
    for i, sample in enumerate(samples):
        by_model_task[sample.model_label].setdefault(sample.task_id, []).append(i)

    def feat(i: int) -> SampleFeatures:
        if features[i] is None:
            features[i] = SampleFeatures.from_source(samples[i].source)
        return features[i]

    rng = random.Random(seed)
    cell_medians: dict[tuple[str, str], tuple[float, float, float]] = {}
    pair_counts: dict[tuple[str, str], int] = {}

    def summarize(pair_key: tuple[str, str], index_pairs: list[tuple[int, int]]) -> None:
        if not index_pairs:
            raise ValueError(
                f"model pair {pair_key} shares no tasks with enough samples to form pairs"
            )
        if max_pairs_per_cell is not None and len(index_pairs) > max_pairs_per_cell:
            index_pairs = rng.sample(index_pairs, max_pairs_per_cell)
        scores = [pair_score(feat(i), feat(j)).as_tuple() for i, j in index_pairs]
        cell_medians[pair_key] = tuple(
            statistics.median(s[c] for s in scores) for c in range(3)
        )
        pair_counts[pair_key] = len(index_pairs)

    for model in models:
        pairs = []
        for task_samples in by_model_task[model].values():
            for i in range(len(task_samples)):
                for j in range(i + 1, len(task_samples)):
                    pairs.append((task_samples[i], task_samples[j]))
        summarize((model, model), pairs)

    for a_idx in range(len(models)):
        for b_idx in range(a_idx + 1, len(models)):
            m_a, m_b = models[a_idx], models[b_idx]
            pairs = []
            shared = set(by_model_task[m_a]) & set(by_model_task[m_b])
            for task in shared:
                for i in by_model_task[m_a][task]:
                    for j in by_model_task[m_b][task]:
                        pairs.append((i, j))
            summarize(tuple(sorted((m_a, m_b))), pairs)

    intra_cells = [v for k, v in cell_medians.items() if k[0] == k[1]]
    inter_cells = [v for k, v in cell_medians.items() if k[0] != k[1]]
    intra_avg = tuple(sum(c[i] for c in intra_cells) / len(intra_cells) for i in range(3))
    inter_avg = tuple(sum(c[i] for c in inter_cells) / len(inter_cells) for i in range(3))
    gap = tuple(intra_avg[i] - inter_avg[i] for i in range(3))

    return SimilarityReport(
        models=tuple(models),
        cell_medians=cell_medians,
        pair_counts=pair_counts,
        intra_avg=intra_avg,
        inter_avg=inter_avg,
        gap=gap,
        seed=seed,
        max_pairs_per_cell=max_pairs_per_cell,
    )
