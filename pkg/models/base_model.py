from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List

import numpy as np

from errors import DimensionMismatchException
from records.features import COLUMN_COUNT, column_checksum


@dataclass(frozen=True)
class TrainingInfo:
    """
    Where a model's training rows came from

    Attributes:
        language        language tag of the training corpus
        conversations   training conversation ids
        rows            training rows
        columns         checksum of the feature column order
    """
    language: str = ""
    conversations: List[str] = field(default_factory=list)
    rows: int = 0
    columns: str = field(default_factory=column_checksum)


class BaseModel(ABC):
    """
    Reduction predictor Base class
    Models are immutable once trained

    Constants:
        MODEL_NAME  name of the model, set by subclasses
        LOGGER      logger instance, set by subclasses
    """
    MODEL_NAME = None
    LOGGER = None

    def __init__(self, info: TrainingInfo):
        self.info = info

    @abstractmethod
    def predict(self, matrix: np.ndarray) -> np.ndarray:
        """
        Should estimate the reduction level of every row

        :raises DimensionMismatchException: if rows are not 85 wide

        :param matrix:  rows x 85 feature values
        :return:        estimates, one per row
        """
        pass

    @abstractmethod
    def parameters(self) -> dict:
        """
        Should return the model's hyperparameters as header key/values
        """
        pass

    @staticmethod
    def check_matrix(matrix: np.ndarray, columns: int = COLUMN_COUNT) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix[None, :]
        if matrix.shape[1] != columns:
            raise DimensionMismatchException(columns, matrix.shape[1])
        return matrix

    def header(self) -> dict:
        header = {"model": self.MODEL_NAME, "language": self.info.language}
        header.update(self.parameters())
        header.update({
            "columns": self.info.columns,
            "conversations": ";".join(self.info.conversations),
            "rows": self.info.rows,
        })
        return header
