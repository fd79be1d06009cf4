"""Acceptance gate: one test per criterion, each printing a verdict line.

Criteria that reproduce published numbers need the released dataset;
point JSSTYLO_DATASET_ROOT at its directory of JSONL/JSON record files
to enable them. Desk-scale criteria run on the built-in style-controlled
demo corpus and are always active. Run with `pytest -s` to see the
verdict lines on passing runs.
"""

import math
import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import propchecks
from conftest import FIVE_GPT_MODELS, run_reftool

from jsstylo.classifiers import ClassifierSpec, fit, predict
from jsstylo.corpus import deduplicate, load_corpus, stratified_split
from jsstylo.evaluation import evaluate
from jsstylo.features import build_vocabulary, tfidf, vectorize
from jsstylo.jsfront.dataflow import dataflow_edges
from jsstylo.jsfront.lexer import tokenize
from jsstylo.jsfront.parser import parse
from jsstylo.jsfront.jsast import preorder_kinds
from jsstylo.similarity import dataflow_match, diversity_report, ngram_match, syntax_match
from jsstylo.synthgen import make_corpus

ALGO_ORDER = ("gboost", "random_forest", "linear_svm", "logreg", "knn")

TABLE2_5CLASS = {  # accuracy percent, tolerance points
    "gboost": (88.72, 3.0),
    "random_forest": (86.24, 3.0),
    "linear_svm": (82.64, 3.0),
    "logreg": (80.40, 3.0),
    "knn": (71.32, 4.0),
}

TABLE1_GAP = {"ngram": 0.20, "syntax": 0.16, "dataflow": 0.21}
TABLE1_MODELS = ["gemini-2.5-flash-lite", "gpt-4o", "gpt-5-mini"]


def _verdict(criterion: str, status: str, detail: str = "") -> None:
    print(f"[criterion {criterion}] {status}" + (f": {detail}" if detail else ""))


def _attribution_accuracies(corpus, classes, seed=42):
    corpus = deduplicate(corpus.filter(labels=classes))
    split = stratified_split(corpus, Fraction(4, 5), seed)
    vocab = build_vocabulary(split.train)
    X_train, X_valid = vectorize(split.train, vocab), vectorize(split.valid, vocab)
    y_train = [s.model_label for s in split.train]
    y_valid = [s.model_label for s in split.valid]
    accs = {}
    for algorithm in ALGO_ORDER:
        model = fit(ClassifierSpec(algorithm, seed), X_train, y_train)
        accs[algorithm] = evaluate(model, X_valid, y_valid).accuracy
    return accs


def test_criterion_1_table2_reproduction_full_dataset(dataset_root):
    corpus = load_corpus(dataset_root, "original")
    classes = [label for label in corpus.label_set if label in set(FIVE_GPT_MODELS)]
    if len(classes) != 5:
        pytest.skip(f"dataset does not carry the five GPT-family labels, found {classes}")
    accs = _attribution_accuracies(corpus, classes)
    failures = []
    for algorithm, (expected, tolerance) in TABLE2_5CLASS.items():
        got = accs[algorithm] * 100
        if abs(got - expected) > tolerance:
            failures.append(f"{algorithm}: {got:.2f} vs {expected} (±{tolerance})")
    detail = ", ".join(f"{a}={accs[a] * 100:.2f}" for a in ALGO_ORDER)
    _verdict("1", "FAIL" if failures else "PASS", detail)
    assert not failures, failures


def _desk_scale_corpus():
    root = os.environ.get("JSSTYLO_DATASET_ROOT")
    if root and Path(root).exists():
        corpus = load_corpus(root, "original").filter(labels=FIVE_GPT_MODELS)
        if len(corpus) >= 1500 and len(corpus.label_set) == 5:
            # 300/class subsample: first 30 tasks x 10 repeats per label
            tasks = sorted({s.task_id for s in corpus})[:30]
            keep = tuple(s for s in corpus if s.task_id in set(tasks))
            return type(corpus)(keep), "dataset subsample"
    return make_corpus(models=FIVE_GPT_MODELS, n_tasks=30, repeats=10, seed=42), "demo corpus"


def test_criterion_2_classifier_ordering_desk_scale():
    corpus, origin = _desk_scale_corpus()
    accs = _attribution_accuracies(corpus, FIVE_GPT_MODELS, seed=42)
    ordered = [accs[a] for a in ALGO_ORDER]
    inversions = sum(1 for a, b in zip(ordered, ordered[1:]) if a < b)
    floor_ok = all(acc >= 0.20 + 0.25 for acc in ordered)
    detail = f"{origin}; " + ", ".join(f"{a}={accs[a]:.3f}" for a in ALGO_ORDER)
    ok = inversions <= 1 and floor_ok
    _verdict("2", "PASS" if ok else "FAIL", detail + f"; adjacent inversions={inversions}")
    assert inversions <= 1, detail
    assert floor_ok, detail


def test_criterion_3_variant_robustness(dataset_root):
    original = load_corpus(dataset_root, "original").filter(labels=FIVE_GPT_MODELS)
    mangled = load_corpus(dataset_root, "mangled").filter(labels=FIVE_GPT_MODELS)
    if not len(mangled):
        pytest.skip("dataset has no mangled variant records")
    acc_orig = _attribution_accuracies(original, FIVE_GPT_MODELS)
    acc_mang = _attribution_accuracies(mangled, FIVE_GPT_MODELS)
    failures = [
        f"{a}: original {acc_orig[a]:.3f} vs mangled {acc_mang[a]:.3f}"
        for a in ALGO_ORDER
        if abs(acc_orig[a] - acc_mang[a]) > 0.06
    ]
    _verdict("3", "FAIL" if failures else "PASS",
             ", ".join(f"{a}:{acc_orig[a]:.2f}->{acc_mang[a]:.2f}" for a in ALGO_ORDER))
    assert not failures, failures


def test_criterion_4_table1_gap_reproduction(dataset_root):
    corpus = load_corpus(dataset_root, "original")
    missing = set(TABLE1_MODELS) - set(corpus.label_set)
    if missing:
        pytest.skip(f"dataset lacks Table-1 models: {sorted(missing)}")
    report = diversity_report(corpus, TABLE1_MODELS, seed=42, max_pairs_per_cell=2000)
    failures = []
    for i, component in enumerate(("ngram", "syntax", "dataflow")):
        if abs(report.gap[i] - TABLE1_GAP[component]) > 0.05:
            failures.append(f"{component} gap {report.gap[i]:.3f} vs {TABLE1_GAP[component]}")
    intra_df = [v[2] for k, v in report.cell_medians.items() if k[0] == k[1]]
    inter_df = [v[2] for k, v in report.cell_medians.items() if k[0] != k[1]]
    if not (min(intra_df) > max(inter_df)):
        failures.append(f"dataflow intra medians {intra_df} do not dominate inter {inter_df}")
    _verdict("4", "FAIL" if failures else "PASS",
             f"gaps ngram={report.gap[0]:.3f} syntax={report.gap[1]:.3f} dataflow={report.gap[2]:.3f}")
    assert not failures, failures


def test_criterion_5_oracle_equivalence_suite():
    # (a) smoothed-BLEU hand fixture to 1e-9
    expected_bleu = math.exp(
        (math.log(3 / 4) + math.log(1 / 3) + math.log(1 / 3) + math.log(1 / 2)) / 4
    )
    got_bleu = ngram_match(tokenize("a b c d"), tokenize("a b x d"))
    assert abs(got_bleu - expected_bleu) <= 1e-9

    # (b) TF-IDF 3-document hand fixture to 1e-9
    docs = [["a", "b", "a"], ["a", "c"], ["b", "b", "d"]]
    vocab = build_vocabulary(docs)
    idf_common = math.log(4 / 3) + 1
    weights = [2 * idf_common, 1 * idf_common]
    norm = math.sqrt(sum(w * w for w in weights))
    got = tfidf(docs[0], vocab)
    assert got.columns == (0, 1)
    for got_w, exp_w in zip(got.weights, [w / norm for w in weights]):
        assert abs(got_w - exp_w) <= 1e-9

    # (c) logreg vs dense 2-D grid-search optimum on the 4-point toy
    X = np.array([[-1.0, -1.0], [-2.0, -1.0], [1.0, 1.0], [2.0, 1.0]])
    signs = np.array([-1.0, -1.0, 1.0, 1.0])
    y = np.array(["neg", "neg", "pos", "pos"])
    grid = np.arange(-4.0, 4.0001, 0.02)
    best, best_loss = None, math.inf
    for w1 in grid:
        for w2 in grid:
            margins = signs * (X[:, 0] * w1 + X[:, 1] * w2)
            loss = 0.5 * (w1 * w1 + w2 * w2) + np.logaddexp(0.0, -margins).sum()
            if loss < best_loss:
                best, best_loss = (w1, w2), loss
    oracle_labels = np.where(X @ np.array(best) > 0, "pos", "neg")
    model = fit(ClassifierSpec("logreg", seed=0), X, y)
    assert (predict(model, X) == oracle_labels).all()

    # (d) syntax_match against hand-enumerated 5-node subtrees
    assert syntax_match(parse("x = 1;"), parse("y = x;")) == pytest.approx(1 / 5)
    assert syntax_match(parse("f(1);"), parse("f(1); g(2);")) == pytest.approx(4 / 5)
    assert syntax_match(parse("f(1); g(2);"), parse("f(1);")) == pytest.approx(4 / 9)

    # (e) dataflow Jaccard arithmetic, exact
    cand = dataflow_edges(parse("let a = 1; let b = a; let c = b;"))
    ref = dataflow_edges(parse("let a = 1; let b = 2; let c = b; let d = c;"))
    assert dataflow_match(cand, ref) == 1 / 3
    empty = dataflow_edges(parse("const x = 1;"))
    assert dataflow_match(empty, empty) == 1.0

    _verdict("5", "PASS", "bleu/tfidf/logreg-grid/syntax/dataflow oracles all matched")


def test_criterion_6_frontend_differential(differential_files, differential_reference, tmp_path):
    token_mismatches = []
    kind_mismatches = []
    for path, ref in zip(differential_files, differential_reference):
        source = path.read_text()
        if "error" in ref:
            token_mismatches.append({"file": str(path), "reference_error": ref["error"]})
            continue
        mine_tokens = [[t.kind, t.text] for t in tokenize(source)]
        if mine_tokens != ref["tokens"]:
            token_mismatches.append({"file": str(path)})
        mine_kinds = preorder_kinds(parse(source))
        if mine_kinds != ref["kinds"]:
            kind_mismatches.append({"file": str(path)})
    total = len(differential_files)
    token_agree = 1 - len(token_mismatches) / total
    kind_agree = 1 - len(kind_mismatches) / total
    triage = tmp_path / "differential_triage.json"
    import json

    triage.write_text(json.dumps(
        {"tokens": token_mismatches, "kinds": kind_mismatches}, indent=2
    ))
    ok = token_agree >= 0.995 and kind_agree >= 0.995
    _verdict("6", "PASS" if ok else "FAIL",
             f"tokens {token_agree:.4f}, preorders {kind_agree:.4f} over {total} files; triage {triage}")
    assert ok, (token_mismatches[:3], kind_mismatches[:3])


def test_criterion_7_invariant_suite(demo_sources):
    counts = {
        "minify token preservation": propchecks.check_minify_token_preservation(demo_sources),
        "mangle shape preservation": propchecks.check_mangle_shape_preservation(demo_sources),
        "dataflow mangle-invariance": propchecks.check_dataflow_mangle_invariance(demo_sources),
        "split determinism": propchecks.check_split_determinism(1000),
        "dedup idempotence": propchecks.check_dedup_idempotence(1000),
    }
    assert all(count >= 1000 for count in counts.values()), counts
    _verdict("7", "PASS", "; ".join(f"{name}: {count} cases" for name, count in counts.items()))


def test_criterion_8_transformer_rows_excluded():
    # The fine-tuned transformer results (95.8/94.6/88.5) are outside this
    # artifact's scope by design; nothing here trains or asserts them.
    _verdict("8", "PASS", "transformer attribution rows excluded by scope")
