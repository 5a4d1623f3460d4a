from __future__ import annotations

import numpy as np
from scipy import linalg

from config import Config
from errors import DimensionMismatchException, InsufficientDataException
from logger import Logger
from models.base_model import BaseModel, TrainingInfo
from models.standardizer import Standardizer


class LinearModel(BaseModel):
    """
    Least-squares linear predictor
    Fitted through the normal equations on centered columns with a small ridge
    term on the feature weights, the intercept is not penalized and constant
    columns get weight 0

    Attributes:
        weights     one weight per feature column
        intercept   constant term
        ridge_lambda    ridge term used for fitting
    """
    MODEL_NAME = "linear"
    LOGGER = Logger(MODEL_NAME)

    def __init__(self, weights: np.ndarray, intercept: float, ridge_lambda: float = Config.RIDGE_LAMBDA,
                 info: TrainingInfo = None):
        super().__init__(info or TrainingInfo())
        self.weights = np.asarray(weights, dtype=np.float64)
        self.intercept = float(intercept)
        self.ridge_lambda = ridge_lambda

    @classmethod
    def train(cls, matrix: np.ndarray, labels: np.ndarray, ridge_lambda: float = Config.RIDGE_LAMBDA,
              info: TrainingInfo = None) -> LinearModel:
        """
        :raises InsufficientDataException:  unless there are more rows than columns
        :raises DimensionMismatchException: if labels and rows disagree

        :param matrix:          rows x columns raw feature values
        :param labels:          reduction level per row
        :param ridge_lambda:    ridge term on the feature block
        :param info:            training provenance
        :return:                fitted LinearModel
        """
        matrix = np.asarray(matrix, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.float64)
        rows, columns = matrix.shape
        if len(labels) != rows:
            raise DimensionMismatchException(rows, len(labels))
        if rows <= columns:
            raise InsufficientDataException(f"{rows} rows for {columns} columns, the fit is underdetermined")

        cls.LOGGER.debug(f"Fitting {columns} weights on {rows} rows, lambda {ridge_lambda}")
        # solved on centered, scaled columns without the intercept;
        # the penalty is rescaled so it stays on the raw weights
        standardizer = Standardizer.fit(matrix)
        live = ~standardizer.flagged
        design = standardizer.apply(matrix)[:, live]
        scale = standardizer.sd[live]
        centered = labels - labels.mean()

        if not live.any():
            raise InsufficientDataException("every column is constant")
        gram = design.T @ design + np.diag(ridge_lambda / scale ** 2)
        try:
            solution = linalg.solve(gram, design.T @ centered, assume_a="sym")
        except linalg.LinAlgError:
            cls.LOGGER.error("Normal equations are singular")
            raise InsufficientDataException("singular normal equations, raise lambda")

        if not np.all(np.isfinite(solution)):
            raise InsufficientDataException("normal equations gave non-finite weights")
        weights = np.zeros(columns)
        weights[live] = solution / scale
        if not live.all():
            cls.LOGGER.debug(f"{int((~live).sum())} constant columns get weight 0")
        model = cls(weights, labels.mean() - standardizer.mean @ weights, ridge_lambda, info)
        cls.LOGGER.info(f"Linear model trained on {rows} rows, intercept {model.intercept:.4f}")
        return model

    def predict(self, matrix: np.ndarray) -> np.ndarray:
        matrix = self.check_matrix(matrix, len(self.weights))
        return matrix @ self.weights + self.intercept

    def parameters(self) -> dict:
        return {"lambda": self.ridge_lambda}
