from __future__ import annotations

import numpy as np

from config import Config
from errors import ConfigException, DimensionMismatchException
from logger import Logger
from models.base_model import BaseModel, TrainingInfo
from models.standardizer import Standardizer


class KnnModel(BaseModel):
    """
    k-nearest-neighbors predictor over standardized rows
    The estimate is the mean label of the k closest training rows by
    Euclidean distance; equal distances keep the lower row index

    Attributes:
        standardizer    scaling fitted on the training rows
        rows            standardized training rows
        labels          training labels
        k               neighbors averaged
    """
    MODEL_NAME = "knn"
    LOGGER = Logger(MODEL_NAME)

    def __init__(self, standardizer: Standardizer, rows: np.ndarray, labels: np.ndarray,
                 k: int = Config.KNN_DEFAULT_K, info: TrainingInfo = None):
        super().__init__(info or TrainingInfo())
        if not 1 <= k <= len(rows):
            raise ConfigException("k", f"{k} outside 1..{len(rows)} training rows")
        self.standardizer = standardizer
        self.rows = np.asarray(rows, dtype=np.float64)
        self.labels = np.asarray(labels, dtype=np.float64)
        self.k = int(k)

    @classmethod
    def train(cls, matrix: np.ndarray, labels: np.ndarray, k: int = Config.KNN_DEFAULT_K,
              info: TrainingInfo = None) -> KnnModel:
        """
        :raises InsufficientDataException:  for fewer than 2 rows
        :raises DimensionMismatchException: if labels and rows disagree
        :raises ConfigException:            if k exceeds the rows

        :param matrix:  rows x columns raw feature values
        :param labels:  reduction level per row
        :param k:       neighbors averaged
        :param info:    training provenance
        :return:        KnnModel storing the standardized rows
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        if len(labels) != len(matrix):
            raise DimensionMismatchException(len(matrix), len(labels))
        standardizer = Standardizer.fit(matrix)
        flagged = int(standardizer.flagged.sum())
        if flagged:
            cls.LOGGER.warning(f"{flagged} constant columns ignored by the distance")
        cls.LOGGER.info(f"kNN model stores {len(matrix)} rows, k = {k}")
        return cls(standardizer, standardizer.apply(matrix), labels, k, info)

    def neighbors(self, query: np.ndarray) -> np.ndarray:
        """
        :param query:   one standardized row
        :return:        indices of the k nearest training rows, nearest first
        """
        difference = self.rows - query
        distance = np.einsum("ij,ij->i", difference, difference)
        return np.argsort(distance, kind="stable")[:self.k]

    def predict(self, matrix: np.ndarray) -> np.ndarray:
        matrix = self.check_matrix(matrix, self.standardizer.columns)
        queries = self.standardizer.apply(matrix)
        self.LOGGER.debug(f"Predicting {len(queries)} rows against {len(self.rows)} stored rows")
        return np.array([self.labels[self.neighbors(query)].mean() for query in queries])

    def parameters(self) -> dict:
        return {"k": self.k}
