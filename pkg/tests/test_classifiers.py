import math

import numpy as np
import pytest
from scipy import sparse

from jsstylo.classifiers import (
    ALGORITHMS,
    ClassifierSpec,
    fit,
    load_model,
    predict,
    save_model,
)


def gaussian_blobs(n_per=10, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal((0, 0), 0.3, size=(n_per, 2))
    b = rng.normal((4, 4), 0.3, size=(n_per, 2))
    X = np.vstack([a, b])
    y = np.array(["alpha"] * n_per + ["beta"] * n_per)
    return X, y


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_separable_blobs_reach_perfect_training_accuracy(algorithm):
    X, y = gaussian_blobs()
    model = fit(ClassifierSpec(algorithm, seed=3), X, y)
    assert (predict(model, X) == y).all()


def test_single_label_is_an_error():
    X = np.zeros((4, 2))
    with pytest.raises(ValueError, match="2 distinct labels"):
        fit(ClassifierSpec("knn"), X, np.array(["only"] * 4))


def test_dimension_mismatch_errors():
    X, y = gaussian_blobs()
    with pytest.raises(ValueError, match="rows"):
        fit(ClassifierSpec("logreg"), X, y[:-1])
    model = fit(ClassifierSpec("logreg"), X, y)
    with pytest.raises(ValueError, match="dimension"):
        predict(model, np.zeros((2, 3)))


def test_knn_k1_predicts_own_label_on_training_points():
    X, y = gaussian_blobs(n_per=6, seed=5)
    model = fit(ClassifierSpec("knn", hyperparameters={"neighbors": 1}), X, y)
    assert (predict(model, X) == y).all()


def test_label_order_is_lexicographic():
    X, y = gaussian_blobs()
    model = fit(ClassifierSpec("random_forest", seed=1), X, y)
    assert model.label_order == ("alpha", "beta")


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_seed_determinism(algorithm):
    rng = np.random.default_rng(11)
    X = rng.normal(size=(60, 8))
    y = np.array([f"c{i % 3}" for i in range(60)])
    m1 = fit(ClassifierSpec(algorithm, seed=7), X, y)
    m2 = fit(ClassifierSpec(algorithm, seed=7), X, y)
    probe = rng.normal(size=(25, 8))
    assert (predict(m1, probe) == predict(m2, probe)).all()


def test_predictions_stay_in_training_label_set():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(40, 5))
    y = np.array([f"m{i % 4}" for i in range(40)])
    for algorithm in ALGORITHMS:
        model = fit(ClassifierSpec(algorithm, seed=1), X, y)
        out = predict(model, rng.normal(size=(30, 5)) * 10)
        assert set(out) <= set(model.label_order)


def test_knn_scale_consistency():
    X, y = gaussian_blobs(n_per=8, seed=9)
    probe = np.random.default_rng(10).normal((2, 2), 1.0, size=(12, 2))
    base = predict(fit(ClassifierSpec("knn", seed=0), X, y), probe)
    scaled = predict(fit(ClassifierSpec("knn", seed=0), X * 7.5, y), probe * 7.5)
    assert (base == scaled).all()


@pytest.mark.parametrize("algorithm", ["random_forest", "gboost"])
def test_tree_ensembles_scale_consistency_on_refit(algorithm):
    rng = np.random.default_rng(21)
    X = rng.normal(size=(80, 6))
    y = np.array([f"c{i % 2}" for i in range(80)])
    probe = rng.normal(size=(30, 6))
    base = predict(fit(ClassifierSpec(algorithm, seed=4), X, y), probe)
    scaled = predict(fit(ClassifierSpec(algorithm, seed=4), X * 3.0, y), probe * 3.0)
    assert (base == scaled).all()


def xor_dataset(n=200, seed=13):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1, 1, size=(n, 2))
    y = np.where(X[:, 0] * X[:, 1] > 0, "pos", "neg")
    return X, y


def test_trees_beat_linear_on_xor():
    X, y = xor_dataset()
    Xv, yv = xor_dataset(seed=14)
    acc = {}
    for algorithm in ("logreg", "random_forest", "gboost"):
        model = fit(ClassifierSpec(algorithm, seed=1), X, y)
        acc[algorithm] = float((predict(model, Xv) == yv).mean())
    assert acc["random_forest"] >= acc["logreg"]
    assert acc["gboost"] >= acc["logreg"]


def test_logreg_matches_grid_search_optimum():
    """Oracle: dense grid over a 2-D weight vector minimizing the
    L2-regularized logistic loss 0.5*||w||^2 + C * sum log(1+exp(-y w.x))
    with C = 1 and no intercept term; points are symmetric so the
    intercept-free optimum classifies like the fitted model."""
    X = np.array([[-1.0, -1.0], [-2.0, -1.0], [1.0, 1.0], [2.0, 1.0]])
    y_signs = np.array([-1.0, -1.0, 1.0, 1.0])
    y = np.array(["neg", "neg", "pos", "pos"])

    grid = np.arange(-4.0, 4.0001, 0.02)
    best, best_loss = None, math.inf
    for w1 in grid:
        for w2 in grid:
            margins = y_signs * (X[:, 0] * w1 + X[:, 1] * w2)
            loss = 0.5 * (w1 * w1 + w2 * w2) + np.logaddexp(0.0, -margins).sum()
            if loss < best_loss:
                best, best_loss = (w1, w2), loss

    oracle_labels = np.where(X @ np.array(best) > 0, "pos", "neg")
    model = fit(ClassifierSpec("logreg", seed=0), X, y)
    assert (predict(model, X) == oracle_labels).all()


def test_sparse_input_accepted_everywhere():
    X, y = gaussian_blobs(n_per=8, seed=1)
    Xs = sparse.csr_matrix(X)
    for algorithm in ALGORITHMS:
        model = fit(ClassifierSpec(algorithm, seed=2), Xs, y)
        assert (predict(model, Xs) == y).all()


def test_unknown_algorithm_and_hyperparameters_rejected():
    with pytest.raises(ValueError, match="unknown algorithm"):
        ClassifierSpec("svm_rbf")
    with pytest.raises(ValueError, match="unknown hyperparameters"):
        ClassifierSpec("knn", hyperparameters={"gamma": 1})


def test_defaults_match_published_settings():
    assert ClassifierSpec("knn").resolved()["neighbors"] == 5
    assert ClassifierSpec("logreg").resolved()["max_iter"] == 2000
    assert ClassifierSpec("linear_svm").resolved()["max_iter"] == 2000
    assert ClassifierSpec("random_forest").resolved()["trees"] == 400
    assert ClassifierSpec("gboost").resolved()["estimators"] == 400


def test_model_save_load_roundtrip(tmp_path):
    X, y = gaussian_blobs()
    model = fit(ClassifierSpec("logreg", seed=6), X, y)
    path = tmp_path / "model.pkl"
    save_model(model, path, vocabulary_json={"format_version": 1, "entries": [], "corpus_size": 1})
    loaded, vocab_json = load_model(path)
    assert loaded.label_order == model.label_order
    assert vocab_json["corpus_size"] == 1
    assert (predict(loaded, X) == predict(model, X)).all()


def test_model_load_rejects_version_mismatch(tmp_path):
    import pickle

    path = tmp_path / "bad.pkl"
    with path.open("wb") as fh:
        pickle.dump({"format_version": 0}, fh)
    with pytest.raises(ValueError, match="format_version"):
        load_model(path)


def test_logreg_zero_vector_predicts_bias_argmax():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(90, 4)) + np.repeat([[0], [2], [-1]], 30, axis=0)
    y = np.array(["a"] * 30 + ["b"] * 30 + ["c"] * 30)
    model = fit(ClassifierSpec("logreg", seed=0), X, y)
    est = model.estimator
    expected = est.classes_[int(np.argmax(est.intercept_))]
    assert predict(model, np.zeros((1, 4)))[0] == expected


def test_knn_vote_ties_break_to_smallest_label_index():
    # k=2 with one neighbor of each label at equal distance: the vote is
    # tied, so the lexicographically first label must win.
    X = np.array([[0.0, 1.0], [0.0, -1.0]])
    y = np.array(["zeta", "alpha"])
    model = fit(ClassifierSpec("knn", hyperparameters={"neighbors": 2}), X, y)
    assert predict(model, np.array([[0.0, 0.0]]))[0] == "alpha"
