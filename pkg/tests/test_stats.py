import math

import numpy as np
import pytest
from scipy import integrate

from analysis.correlation import CorrelationAnalysis
from analysis.stats import Statistics
from errors import InsufficientDataException, UndefinedResultException
from records.features import COLUMN_COUNT, ContextSpan, FeatureKind, FeatureMatrix, column_index
from records.region import FrameLabels


def oracle_pearson(x, y):
    n = len(x)
    mx, my = math.fsum(x) / n, math.fsum(y) / n
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)


def t_density(x, df):
    log_norm = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(log_norm - (df + 1) / 2 * math.log1p(x * x / df))


def oracle_upper_tail(t, df):
    tail, _ = integrate.quad(t_density, t, math.inf, args=(df,), epsabs=1e-12, epsrel=1e-12)
    return tail


def matrix_of(values, conversation="c"):
    values = np.asarray(values, dtype=np.float64)
    return FeatureMatrix(conversation, "left", np.arange(len(values)), values, np.ones_like(values))


def test_pearson_of_a_small_sample():
    assert Statistics.pearson([1, 2, 3, 4], [1, 3, 2, 5]) == pytest.approx(0.8315, abs=1e-4)


def test_pearson_of_a_line_and_its_reversal():
    x = np.linspace(-3.0, 7.0, 101)
    assert Statistics.pearson(x, x) == 1.0
    assert Statistics.pearson(x, -x) == -1.0


def test_pearson_matches_an_exact_sum_oracle(rng):
    for _ in range(1000):
        n = int(rng.integers(2, 501))
        x = rng.normal(size=n)
        y = rng.uniform(-1.0, 1.0) * x + rng.normal(size=n)

        assert Statistics.pearson(x, y) == pytest.approx(oracle_pearson(x.tolist(), y.tolist()), abs=1e-10)


@pytest.mark.parametrize("x, y", [
    ([1.0], [2.0]),
    ([], []),
    ([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]),
    ([1.0, 2.0], [1.0, 2.0, 3.0]),
])
def test_pearson_undefined_cases(x, y):
    with pytest.raises(UndefinedResultException):
        Statistics.pearson(x, y)


def test_t_test_of_a_small_sample():
    t, p = Statistics.one_sided_t_test([1, 2, 3, 4, 5], 2.0)

    assert t == pytest.approx(1.4142, abs=1e-4)
    assert p == pytest.approx(0.115, abs=1e-3)
    assert p == pytest.approx(oracle_upper_tail(t, 4), abs=1e-6)


def test_t_test_matches_a_quadrature_oracle(rng):
    for _ in range(20):
        n = int(rng.integers(3, 51))
        samples = rng.normal(1.0, 0.7, n)
        mu0 = float(rng.uniform(0.5, 1.5))

        t, p = Statistics.one_sided_t_test(samples, mu0)

        assert p == pytest.approx(oracle_upper_tail(t, n - 1), abs=1e-6)


def test_t_test_without_spread():
    assert Statistics.one_sided_t_test([2.0, 2.0, 2.0], 1.0) == (math.inf, 0.0)
    assert Statistics.one_sided_t_test([2.0, 2.0, 2.0], 3.0) == (-math.inf, 1.0)
    assert Statistics.one_sided_t_test([2.0, 2.0], 2.0) == (0.0, 0.5)


def test_t_test_needs_two_samples():
    with pytest.raises(InsufficientDataException):
        Statistics.one_sided_t_test([1.0], 0.0)


def test_bonferroni_gate():
    assert Statistics.bonferroni_gate([0.005, 0.0055, 0.006, 0.04], 0.05, 9).tolist() == [True, True, False, False]
    assert Statistics.bonferroni_gate([0.0009, 0.011], 0.05, 9).tolist() == [True, False]
    assert Statistics.bonferroni_gate([0.049], 0.05, 1).tolist() == [True]
    assert 0.05 / 9 == pytest.approx(0.005556, abs=1e-6)

    with pytest.raises(ValueError):
        Statistics.bonferroni_gate([0.01], 0.05, 0)


def test_a_column_equal_to_the_labels_correlates_perfectly(rng):
    levels = rng.integers(0, 4, 500)
    values = rng.normal(size=(500, COLUMN_COUNT))
    values[:, column_index(FeatureKind.EN, ContextSpan.C)] = levels

    table = CorrelationAnalysis.correlation_table([(matrix_of(values), FrameLabels(levels.astype(np.int8)))], "en")

    assert table.entry(FeatureKind.EN, ContextSpan.C).r == pytest.approx(1.0)
    assert table.best_span(FeatureKind.EN).span is ContextSpan.C
    assert [entry.kind for entry in table.strong(0.5)] == [FeatureKind.EN]
    assert len(table.entries) == COLUMN_COUNT


def test_independent_columns_barely_correlate(rng):
    n = 100000
    levels = rng.integers(0, 4, n).astype(np.int8)
    values = rng.normal(size=(n, COLUMN_COUNT))

    table = CorrelationAnalysis.correlation_table([(matrix_of(values), FrameLabels(levels))], "es")

    assert all(abs(entry.r) < 0.02 for entry in table.entries)
    assert {entry.n for entry in table.entries} == {n}


def test_constant_column_is_an_undefined_entry(rng):
    levels = rng.integers(0, 4, 200).astype(np.int8)
    values = rng.normal(size=(200, COLUMN_COUNT))
    values[:, column_index(FeatureKind.CR, ContextSpan.A)] = 0.0

    table = CorrelationAnalysis.correlation_table([(matrix_of(values), FrameLabels(levels))], "en")

    entry = table.entry(FeatureKind.CR, ContextSpan.A)
    assert entry.r is None
    assert not entry.defined
    assert table.get_dict()["undefined"] == 1


def test_only_labeled_frames_enter_the_correlation(rng):
    values = rng.normal(size=(50, COLUMN_COUNT))
    levels = np.full(40, FrameLabels.UNLABELED, dtype=np.int8)
    levels[10:30] = rng.integers(0, 4, 20)

    rows, labels = CorrelationAnalysis.labeled_rows([(matrix_of(values), FrameLabels(levels))])

    assert rows.shape == (20, COLUMN_COUNT)
    assert np.array_equal(rows, values[10:30])
    assert np.array_equal(labels, levels[10:30])
