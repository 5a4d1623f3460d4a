import math
from typing import Sequence, Tuple

import numpy as np
from scipy import stats

from errors import InsufficientDataException, UndefinedResultException


class Statistics:
    """
    Correlation and significance tests grouped in a class
    """

    @staticmethod
    def pearson(x: Sequence[float], y: Sequence[float]) -> float:
        """
        Sample Pearson correlation

        :raises UndefinedResultException: for unequal lengths, fewer than 2 pairs or zero variance

        :param x:   first sample
        :param y:   second sample
        :return:    r in [-1, 1]
        """
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.shape != y.shape or x.ndim != 1:
            raise UndefinedResultException(f"samples of shape {x.shape} and {y.shape}")
        if len(x) < 2:
            raise UndefinedResultException(f"{len(x)} pairs")

        dx = x - x.mean()
        dy = y - y.mean()
        sxx = float(dx @ dx)
        syy = float(dy @ dy)
        if sxx == 0.0 or syy == 0.0:
            raise UndefinedResultException("zero variance")

        r = float(dx @ dy) / math.sqrt(sxx * syy)
        return min(1.0, max(-1.0, r))

    @staticmethod
    def one_sided_t_test(samples: Sequence[float], mu0: float) -> Tuple[float, float]:
        """
        One-sample t-test with the alternative mean > mu0
        With zero spread, p is 0 above mu0, 1 below it and 0.5 at it

        :raises InsufficientDataException: for fewer than 2 samples

        :param samples: observations
        :param mu0:     reference mean
        :return:        (t, upper-tail p)
        """
        samples = np.asarray(samples, dtype=np.float64)
        n = len(samples)
        if n < 2:
            raise InsufficientDataException(f"t-test needs 2 samples, got {n}")

        mean = float(samples.mean())
        sd = float(samples.std(ddof=1))
        if sd == 0.0:
            if mean > mu0:
                return math.inf, 0.0
            if mean < mu0:
                return -math.inf, 1.0
            return 0.0, 0.5

        t = (mean - mu0) / (sd / math.sqrt(n))
        return t, float(stats.t.sf(t, df=n - 1))

    @staticmethod
    def bonferroni_gate(p_values: Sequence[float], alpha: float, m: int) -> np.ndarray:
        """
        :param p_values:    raw p values
        :param alpha:       family-wise significance level
        :param m:           family size, at least 1
        :return:            survival flags, p < alpha / m
        """
        if m < 1:
            raise ValueError(f"family size {m}")
        return np.asarray(p_values, dtype=np.float64) < alpha / m
