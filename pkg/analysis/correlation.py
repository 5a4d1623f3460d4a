from typing import Iterable, Tuple

import numpy as np

from analysis.stats import Statistics
from errors import UndefinedResultException
from logger import Logger
from records.features import COLUMN_COUNT, ContextSpan, FeatureKind, FeatureMatrix
from records.region import FrameLabels
from records.reports import CorrelationEntry, CorrelationTable


class CorrelationAnalysis:
    """
    Frame-level correlation of every feature column with reduction labels
    """
    ANALYSIS_NAME = "correlation"
    LOGGER = Logger(ANALYSIS_NAME)

    @staticmethod
    def labeled_rows(pairs: Iterable[Tuple[FeatureMatrix, FrameLabels]]) -> Tuple[np.ndarray, np.ndarray]:
        """
        Stacks the rows of labeled frames

        :param pairs:   feature matrices with the frame labels of their channel
        :return:        (rows x 85 values, levels)
        """
        values, levels = [np.zeros((0, COLUMN_COUNT))], [np.zeros(0)]
        for matrix, labels in pairs:
            inside = matrix.frames < labels.frame_count
            frames = matrix.frames[inside]
            rows = labels.labeled[frames]
            values.append(matrix.values[inside][rows])
            levels.append(labels.levels[frames][rows].astype(np.float64))
        return np.concatenate(values), np.concatenate(levels)

    @classmethod
    def correlation_table(cls, pairs: Iterable[Tuple[FeatureMatrix, FrameLabels]],
                          language: str) -> CorrelationTable:
        """
        Pearson r of each (kind, span) column with the labels of labeled frames
        Columns without variance are kept as undefined entries

        :param pairs:       feature matrices with the frame labels of their channel
        :param language:    language tag of the corpus
        :return:            CorrelationTable in kind-major, span-minor order
        """
        values, levels = cls.labeled_rows(pairs)
        cls.LOGGER.debug(f"Correlating {len(levels)} labeled frames")

        entries = []
        column = 0
        for kind in FeatureKind:
            for span in ContextSpan:
                try:
                    r = Statistics.pearson(values[:, column], levels)
                except UndefinedResultException as e:
                    cls.LOGGER.warning(f"{kind.value}_{span.value}: {e}")
                    r = None
                entries.append(CorrelationEntry(kind, span, r, len(levels)))
                column += 1

        table = CorrelationTable(language, entries)
        cls.LOGGER.info(f"Correlation table: {table.get_dict()}")
        return table
