from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config import Config
from errors import DimensionMismatchException, InsufficientDataException


@dataclass(frozen=True, eq=False)
class Standardizer:
    """
    Column-wise z-scoring fitted on a training matrix

    Attributes:
        mean        per-column mean
        sd          per-column sample standard deviation (n - 1)
        flagged     columns without spread; they transform to 0
    """
    mean: np.ndarray
    sd: np.ndarray
    flagged: np.ndarray

    @classmethod
    def fit(cls, matrix: np.ndarray) -> Standardizer:
        """
        :raises InsufficientDataException: for fewer than 2 rows

        :param matrix:  rows x columns
        :return:        fitted Standardizer
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or len(matrix) < 2:
            raise InsufficientDataException(f"standardizer needs 2 rows, got {len(matrix)}")
        mean = matrix.mean(axis=0)
        sd = matrix.std(axis=0, ddof=1)
        return cls(mean=mean, sd=sd, flagged=sd < Config.MIN_SPREAD)

    @property
    def columns(self) -> int:
        return len(self.mean)

    def _check(self, matrix: np.ndarray) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.shape[-1] != self.columns:
            raise DimensionMismatchException(self.columns, matrix.shape[-1])
        return matrix

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        matrix = self._check(matrix)
        scale = np.where(self.flagged, 1.0, self.sd)
        return np.where(self.flagged, 0.0, (matrix - self.mean) / scale)

    def inverse(self, matrix: np.ndarray) -> np.ndarray:
        matrix = self._check(matrix)
        return np.where(self.flagged, self.mean, matrix * self.sd + self.mean)
