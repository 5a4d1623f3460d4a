from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from analysis.stats import Statistics
from errors import InsufficientDataException, UndefinedResultException, UnknownConversationException
from logger import Logger
from records.features import COLUMN_COUNT
from records.reports import EvalReport


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    """
    Labeled feature rows of one or more conversations

    Attributes:
        values          rows x columns
        labels          level per row
        conversations   conversation id per row
    """
    values: np.ndarray
    labels: np.ndarray
    conversations: np.ndarray

    def __len__(self):
        return len(self.labels)

    @property
    def conversation_ids(self) -> List[str]:
        return sorted(set(self.conversations.tolist()))

    @classmethod
    def concatenate(cls, parts: Sequence[LabeledMatrix], columns: int = COLUMN_COUNT) -> LabeledMatrix:
        if not parts:
            return cls(np.zeros((0, columns)), np.zeros(0), np.zeros(0, dtype=object))
        return cls(
            np.concatenate([part.values for part in parts]),
            np.concatenate([part.labels for part in parts]),
            np.concatenate([part.conversations for part in parts]),
        )

    def select(self, mask: np.ndarray) -> LabeledMatrix:
        return LabeledMatrix(self.values[mask], self.labels[mask], self.conversations[mask])


@dataclass(frozen=True, eq=False)
class HoldoutSplit:
    """
    Conversation-level partition of labeled rows

    Attributes:
        train       rows of training conversations
        test        rows of holdout conversations
        holdout     holdout conversation ids
    """
    train: LabeledMatrix
    test: LabeledMatrix
    holdout: List[str]

    @property
    def train_share(self) -> float:
        total = len(self.train) + len(self.test)
        return len(self.train) / total if total else 0.0


class Evaluation:
    """
    Holdout splitting and correlation-based scoring of predictors
    """
    EVALUATION_NAME = "evaluation"
    LOGGER = Logger(EVALUATION_NAME)

    @classmethod
    def split_by_holdout(cls, rows: LabeledMatrix, holdout: Sequence[str],
                         known: Sequence[str] = None) -> HoldoutSplit:
        """
        Partitions rows by conversation

        :raises UnknownConversationException:   if a holdout id is not a known conversation
        :raises InsufficientDataException:      if no training rows remain

        :param rows:        labeled rows of every conversation
        :param holdout:     conversation ids reserved for evaluation
        :param known:       every conversation id, those present in rows when None
        :return:            HoldoutSplit instance
        """
        known = set(known) if known is not None else set(rows.conversation_ids)
        for conversation_id in holdout:
            if conversation_id not in known:
                cls.LOGGER.error(f"Holdout {conversation_id} is not in the corpus")
                raise UnknownConversationException(conversation_id)

        held = np.isin(rows.conversations, list(holdout))
        split = HoldoutSplit(rows.select(~held), rows.select(held), list(holdout))
        if len(split.train) == 0:
            raise InsufficientDataException("every conversation is held out, no training rows")

        share = split.train_share
        cls.LOGGER.info(f"Train/test frames {len(split.train)}/{len(split.test)} "
                        f"({100 * share:.0f}/{100 * (1 - share):.0f})")
        return split

    @classmethod
    def evaluate(cls, predictions: np.ndarray, labels: np.ndarray, holdout: Sequence[str] = (),
                 model: str = "", train_language: str = "", language: str = "") -> EvalReport:
        """
        Pearson r between predictions and labels
        A constant predictor has no defined correlation and is reported as undefined

        :return: EvalReport instance
        """
        try:
            r = Statistics.pearson(predictions, labels)
        except UndefinedResultException as e:
            cls.LOGGER.warning(f"Evaluation undefined: {e}")
            r = None

        report = EvalReport(r, len(labels), list(holdout), model, train_language, language)
        if report.cross_language:
            cls.LOGGER.info(f"Cross-language evaluation: trained on {train_language}, evaluated on {language}")
        return report
