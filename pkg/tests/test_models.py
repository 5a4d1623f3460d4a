import numpy as np
import pytest

from analysis.stats import Statistics
from errors import (ConfigException, DimensionMismatchException, InsufficientDataException,
                    UnknownConversationException)
from models.base_model import TrainingInfo
from models.evaluation import Evaluation, LabeledMatrix
from models.knn_model import KnnModel
from models.linear_model import LinearModel
from models.standardizer import Standardizer
from records.features import COLUMN_COUNT


def labeled(values, labels, conversations):
    return LabeledMatrix(np.asarray(values, dtype=np.float64), np.asarray(labels, dtype=np.float64),
                         np.asarray(conversations, dtype=object))


def brute_force_knn(train, labels, queries, k):
    mean = train.mean(axis=0)
    sd = train.std(axis=0, ddof=1)
    train = (train - mean) / sd
    queries = (queries - mean) / sd
    estimates = []
    for query in queries:
        distances = [(float(np.sum((row - query) ** 2)), index) for index, row in enumerate(train)]
        nearest = [index for _, index in sorted(distances)[:k]]
        estimates.append(float(np.mean(labels[nearest])))
    return np.array(estimates)


def test_standardizer_of_two_values():
    standardizer = Standardizer.fit(np.array([[1.0], [3.0]]))

    assert standardizer.apply(np.array([[1.0], [3.0]]))[:, 0] == pytest.approx([-0.7071, 0.7071], abs=1e-4)
    assert standardizer.inverse(standardizer.apply(np.array([[2.5]])))[0, 0] == pytest.approx(2.5)


def test_standardizer_flags_constant_columns():
    standardizer = Standardizer.fit(np.array([[1.0, 4.0], [3.0, 4.0], [5.0, 4.0]]))

    assert standardizer.flagged.tolist() == [False, True]
    assert standardizer.apply(np.array([[9.0, 100.0]]))[0, 1] == 0.0
    assert standardizer.inverse(np.array([[0.0, 7.0]]))[0, 1] == 4.0

    with pytest.raises(DimensionMismatchException):
        standardizer.apply(np.zeros((1, 3)))
    with pytest.raises(InsufficientDataException):
        Standardizer.fit(np.zeros((1, 2)))


def test_linear_model_recovers_a_line():
    x = np.arange(10.0)[:, None]
    model = LinearModel.train(x, 2.0 * x[:, 0] + 1.0, ridge_lambda=0.0)

    assert model.weights == pytest.approx([2.0])
    assert model.intercept == pytest.approx(1.0)
    assert model.predict(np.array([[20.0]])) == pytest.approx([41.0])


def test_linear_model_ignores_constant_columns(rng):
    matrix = np.zeros((120, COLUMN_COUNT))
    matrix[:, 0] = rng.normal(size=120)

    model = LinearModel.train(matrix, 2.0 * matrix[:, 0] + 1.0)

    assert model.weights[0] == pytest.approx(2.0, abs=1e-5)
    assert model.intercept == pytest.approx(1.0, abs=1e-5)
    assert np.abs(model.weights[1:]).max() < 1e-5


def test_standardizer_round_trip(rng):
    matrix = rng.normal(3.0, 2.0, size=(50, 6))
    standardizer = Standardizer.fit(matrix)

    assert standardizer.inverse(standardizer.apply(matrix)) == pytest.approx(matrix, abs=1e-9)


def test_linear_model_recovers_planted_weights(rng):
    matrix = rng.normal(size=(400, COLUMN_COUNT))
    weights = rng.uniform(-1.0, 1.0, COLUMN_COUNT)
    labels = matrix @ weights + 0.75

    model = LinearModel.train(matrix, labels, ridge_lambda=0.0)

    assert model.weights == pytest.approx(weights, abs=1e-5)
    assert model.intercept == pytest.approx(0.75, abs=1e-5)


def test_ridge_term_splits_duplicated_columns(rng):
    x = rng.normal(size=200)
    model = LinearModel.train(np.column_stack([x, x]), 2.0 * x + 1.0)

    assert model.weights == pytest.approx([1.0, 1.0], abs=1e-3)
    assert model.predict(np.array([[0.5, 0.5]])) == pytest.approx([2.0], abs=1e-4)


def test_linear_model_on_noisy_labels(rng):
    matrix = rng.normal(size=(6000, COLUMN_COUNT))
    labels = 2.0 * matrix[:, 0] + rng.normal(size=6000)

    model = LinearModel.train(matrix[:3000], labels[:3000])
    r = Statistics.pearson(model.predict(matrix[3000:]), labels[3000:])

    assert r == pytest.approx(2.0 / np.sqrt(5.0), abs=0.05)


def test_linear_model_needs_more_rows_than_columns(rng):
    with pytest.raises(InsufficientDataException):
        LinearModel.train(rng.normal(size=(85, COLUMN_COUNT)), rng.normal(size=85))
    with pytest.raises(DimensionMismatchException):
        LinearModel.train(rng.normal(size=(100, 3)), rng.normal(size=99))


def test_linear_model_rejects_other_widths(rng):
    model = LinearModel.train(rng.normal(size=(200, COLUMN_COUNT)), rng.normal(size=200))
    with pytest.raises(DimensionMismatchException):
        model.predict(np.zeros((3, COLUMN_COUNT - 1)))


@pytest.mark.parametrize("k", [1, 5, 200])
def test_knn_matches_brute_force(rng, k):
    train = rng.normal(size=(200, 50))
    labels = rng.integers(0, 4, 200).astype(np.float64)
    queries = rng.normal(size=(50, 50))

    model = KnnModel.train(train, labels, k)

    assert model.predict(queries) == pytest.approx(brute_force_knn(train, labels, queries, k))


def test_knn_with_all_rows_predicts_the_label_mean(rng):
    train = rng.normal(size=(40, 5))
    labels = rng.integers(0, 4, 40).astype(np.float64)

    model = KnnModel.train(train, labels, 40)

    assert model.predict(rng.normal(size=(3, 5))) == pytest.approx(np.full(3, labels.mean()))


def test_knn_ties_keep_the_lower_row():
    train = np.array([[1.0, 0.0], [-1.0, 2.0], [1.0, 0.0], [3.0, 4.0]])
    labels = np.array([0.0, 3.0, 2.0, 1.0])

    nearest = KnnModel.train(train, labels, 1)
    pair = KnnModel.train(train, labels, 2)

    assert nearest.predict(np.array([[1.0, 0.0]])).tolist() == [0.0]
    assert pair.predict(np.array([[1.0, 0.0]])).tolist() == [1.0]
    assert pair.neighbors(pair.standardizer.apply(np.array([1.0, 0.0]))).tolist() == [0, 2]


def test_knn_k_must_fit_the_rows(rng):
    train = rng.normal(size=(10, 3))
    for k in (0, 11):
        with pytest.raises(ConfigException):
            KnnModel.train(train, np.zeros(10), k)


def test_constant_columns_do_not_affect_distances(rng):
    train = rng.normal(size=(50, 4))
    train[:, 2] = 7.0
    labels = rng.integers(0, 4, 50).astype(np.float64)
    model = KnnModel.train(train, labels, 3)

    queries = rng.normal(size=(5, 4))
    shifted = queries.copy()
    shifted[:, 2] = -100.0
    assert model.predict(queries).tolist() == model.predict(shifted).tolist()


def test_split_by_holdout():
    rows = labeled(np.zeros((100, 2)), np.zeros(100), ["a"] * 50 + ["b"] * 34 + ["c"] * 16)

    split = Evaluation.split_by_holdout(rows, ["c"])

    assert (len(split.train), len(split.test)) == (84, 16)
    assert split.train_share == pytest.approx(0.84)
    assert set(split.test.conversations) == {"c"}
    assert split.train.conversation_ids == ["a", "b"]


def test_split_rejects_unknown_and_total_holdouts():
    rows = labeled(np.zeros((4, 2)), np.zeros(4), ["a", "a", "b", "b"])

    with pytest.raises(UnknownConversationException):
        Evaluation.split_by_holdout(rows, ["z"])
    with pytest.raises(InsufficientDataException):
        Evaluation.split_by_holdout(rows, ["a", "b"])

    split = Evaluation.split_by_holdout(rows, ["d"], known=["a", "b", "d"])
    assert len(split.test) == 0


def test_training_never_sees_holdout_rows(rng):
    conversations = np.repeat(["a", "b", "c", "d"], 150)
    values = rng.normal(size=(600, COLUMN_COUNT))
    labels = rng.integers(0, 4, 600).astype(np.float64)

    perturbed = values.copy()
    perturbed[conversations == "d"] += rng.normal(size=(150, COLUMN_COUNT))
    relabeled = labels.copy()
    relabeled[conversations == "d"] = 3.0

    first = Evaluation.split_by_holdout(labeled(values, labels, conversations), ["d"])
    second = Evaluation.split_by_holdout(labeled(perturbed, relabeled, conversations), ["d"])

    model_a = LinearModel.train(first.train.values, first.train.labels)
    model_b = LinearModel.train(second.train.values, second.train.labels)
    assert np.array_equal(model_a.weights, model_b.weights)
    assert model_a.intercept == model_b.intercept


def test_evaluate_reports_correlation():
    report = Evaluation.evaluate(np.array([1.0, 2.0, 3.0, 4.0]), np.array([1.0, 3.0, 2.0, 5.0]), ["c"],
                                 "linear", "en", "es")

    assert report.r == pytest.approx(0.8315, abs=1e-4)
    assert report.n == 4
    assert report.cross_language
    assert report.get_dict()["holdout"] == "c"


def test_constant_predictions_are_undefined():
    report = Evaluation.evaluate(np.full(5, 1.2), np.array([0.0, 1.0, 2.0, 3.0, 1.0]))

    assert report.r is None
    assert not report.defined


def test_labeled_matrices_concatenate():
    parts = [labeled(np.ones((2, 3)), [1, 2], ["a", "a"]), labeled(np.zeros((1, 3)), [0], ["b"])]

    rows = LabeledMatrix.concatenate(parts)
    empty = LabeledMatrix.concatenate([], columns=3)

    assert len(rows) == 3 and rows.conversation_ids == ["a", "b"]
    assert empty.values.shape == (0, 3)


def test_training_info_travels_in_the_header(rng):
    info = TrainingInfo("es", ["a", "b"], 120)
    model = KnnModel.train(rng.normal(size=(120, COLUMN_COUNT)), np.zeros(120), 7, info)

    header = model.header()
    assert header["model"] == "knn" and header["k"] == 7
    assert header["conversations"] == "a;b" and header["rows"] == 120


def test_linear_model_with_constant_nonzero_columns(rng):
    matrix = np.full((150, COLUMN_COUNT), 5.0)
    matrix[:, 0] = rng.normal(size=150)

    model = LinearModel.train(matrix, 2.0 * matrix[:, 0] + 1.0)

    assert model.weights[0] == pytest.approx(2.0, abs=1e-6)
    assert model.intercept == pytest.approx(1.0, abs=1e-6)
    assert np.all(model.weights[1:] == 0.0)


def test_linear_model_on_badly_scaled_columns(rng):
    matrix = rng.normal(size=(300, 12))
    matrix[:, 1:11] = -60.0
    matrix[:, 11] *= 1e3
    labels = 0.5 * matrix[:, 0] + 0.002 * matrix[:, 11] - 3.0

    model = LinearModel.train(matrix, labels, ridge_lambda=0.0)

    assert model.weights[0] == pytest.approx(0.5, abs=1e-8)
    assert model.weights[11] == pytest.approx(0.002, abs=1e-10)
    assert model.intercept == pytest.approx(-3.0, abs=1e-8)
    assert model.predict(matrix) == pytest.approx(labels, abs=1e-8)


def test_linear_model_needs_a_varying_column():
    with pytest.raises(InsufficientDataException):
        LinearModel.train(np.full((20, 3), 2.0), np.arange(20.0))
