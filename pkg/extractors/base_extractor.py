from abc import ABC, abstractmethod
from typing import Iterator, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from records.recording import FrameClock


class BaseExtractor(ABC):
    """
    Extractor Base class
    Defines how a per-frame signal is computed from the samples of one channel

    Frames are cut around the frame centers of the FrameClock and padded by
    reflection at the channel edges; a frame's values depend only on its own
    samples, so identical frames always yield identical values

    Constants:
        EXTRACTOR_NAME  name of the extractor, set by subclasses
        LOGGER          logger instance, set by subclasses
        BLOCK_FRAMES    frames materialized at once
    """
    EXTRACTOR_NAME = None
    LOGGER = None
    BLOCK_FRAMES = 1000

    @abstractmethod
    def extract(self, samples: np.ndarray, sample_rate: int):
        """
        Should compute the extractor's per-frame series

        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            per-frame series
        """
        pass

    def frame_blocks(self, samples: np.ndarray, sample_rate: int,
                     window_ms: float = None) -> Iterator[Tuple[slice, np.ndarray]]:
        """
        Yields consecutive blocks of analysis frames

        :param samples:     channel samples
        :param sample_rate: rate in Hz
        :param window_ms:   analysis window, the clock's default when None
        :return:            (frame slice, block x window matrix) pairs
        """
        clock = FrameClock(sample_rate, len(samples))
        width = clock.window_samples(window_ms)
        starts = np.floor(clock.frame_centers() - width / 2.0 + 0.5).astype(np.int64) + width

        padded = np.pad(np.asarray(samples, dtype=np.float64), width, mode="reflect")
        windows = sliding_window_view(padded, width)

        for first in range(0, clock.frame_count, self.BLOCK_FRAMES):
            frames = slice(first, min(first + self.BLOCK_FRAMES, clock.frame_count))
            yield frames, windows[starts[frames]]

    @staticmethod
    def frame_count(samples: np.ndarray, sample_rate: int) -> int:
        return FrameClock(sample_rate, len(samples)).frame_count
