from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from config import Config
from records.features import FeatureKind
from records.signals import BaseSignals, SpeakerBaseline


class WindowSet:
    """
    Equal-width frame windows over one channel, one row per window

    Windows may reach past the channel edges; those positions are masked out
    and their indices clipped so that gathers stay in bounds

    Attributes:
        starts      nominal first frame of each window, possibly negative
        width       nominal frames per window
        inside      rows x width mask of positions within the channel
        index       rows x width frame indices, clipped to the channel
    """

    def __init__(self, starts, width: int, frame_count: int):
        self.starts = np.atleast_1d(np.asarray(starts, dtype=np.int64))
        self.width = int(width)
        self.frame_count = int(frame_count)

        nominal = self.starts[:, None] + np.arange(self.width)
        self.inside = (nominal >= 0) & (nominal < self.frame_count)
        self.index = np.clip(nominal, 0, max(self.frame_count - 1, 0))

    def __len__(self):
        return len(self.starts)

    def gather(self, series: np.ndarray) -> np.ndarray:
        series = np.asarray(series)
        if len(series) == 0:
            return np.zeros(self.index.shape, dtype=series.dtype)
        return series[self.index]

    def select(self, flags: np.ndarray) -> np.ndarray:
        """
        :param flags:   per-frame boolean series
        :return:        rows x width mask of in-channel positions where flags hold
        """
        return self.inside & self.gather(np.asarray(flags, dtype=bool))


class BaseFeature(ABC):
    """
    Mid-level feature Base class
    A feature turns base signals into a per-frame contribution and a set of
    qualifying frames, then reduces every window over its qualifying frames;
    the default reduction is the mean

    Windows without qualifying frames get the neutral value 0 with coverage 0;
    coverage is the qualifying share of the window's nominal width

    Constants:
        KIND    feature kind, set by subclasses
    """
    KIND: FeatureKind = None

    @abstractmethod
    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        """
        Should return the frames the feature is computed over

        :param signals: BaseSignals of the channel
        :return:        boolean series
        """
        pass

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        """
        Per-frame contribution averaged by the default reduction
        """
        return np.zeros(signals.frame_count)

    def reduce(self, values: np.ndarray, mask: np.ndarray, count: np.ndarray,
               windows: WindowSet, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return self.masked_mean(values, mask, count)

    def evaluate_windows(self, windows: WindowSet, signals: BaseSignals,
                         baseline: SpeakerBaseline) -> Tuple[np.ndarray, np.ndarray]:
        """
        Evaluates the feature over every window of a set

        :param windows:     WindowSet over the channel
        :param signals:     BaseSignals of the channel
        :param baseline:    the channel speaker's baseline
        :return:            (values, coverage) arrays, one entry per window
        """
        mask = windows.select(self.qualifying(signals))
        count = mask.sum(axis=1)
        values = windows.gather(self.frame_values(signals, baseline))

        with np.errstate(divide="ignore", invalid="ignore"):
            value = self.reduce(values, mask, count, windows, signals, baseline)
        value = np.where(count > 0, value, 0.0)
        coverage = count / float(windows.width) if windows.width else np.zeros(len(windows))
        return np.nan_to_num(value, nan=0.0, posinf=0.0, neginf=0.0), coverage

    @staticmethod
    def masked_mean(values: np.ndarray, mask: np.ndarray, count: np.ndarray) -> np.ndarray:
        total = np.where(mask, values, 0.0).sum(axis=1)
        return total / np.maximum(count, 1)

    @staticmethod
    def clamp01(values):
        return np.clip(values, 0.0, 1.0)

    @staticmethod
    def spread(value: float) -> float:
        return value if value >= Config.MIN_SPREAD else Config.MIN_SPREAD

    @staticmethod
    def after_speech(signals: BaseSignals) -> np.ndarray:
        """
        Speech frames whose predecessor is also speech
        """
        flags = signals.speech.copy()
        if len(flags):
            flags[0] = False
            flags[1:] &= signals.speech[:-1]
        return flags

    @staticmethod
    def tilted_speech(signals: BaseSignals) -> np.ndarray:
        return signals.speech & np.isfinite(signals.tilt)
