import math
from typing import Tuple

import numpy as np
from scipy import fft

from config import Config
from extractors.base_extractor import BaseExtractor
from logger import Logger


class PitchExtractor(BaseExtractor):
    """
    Normalized autocorrelation pitch tracker
    Inherits from BaseExtractor

    Each 40 ms frame is mean-removed and correlated with itself; the lag
    correlation is normalized by the energies of the overlapping head and tail
    so that a periodic frame scores 1 at its period. The first local maximum
    reaching PITCH_PEAK_SHARE of the best one is taken, which keeps period
    multiples from winning, and refined by parabolic interpolation

    Constants:
        EXTRACTOR_NAME  name of the extractor
        LOGGER          logger instance
        MIN_ENERGY      energy below which a lag correlation is treated as 0
    """
    EXTRACTOR_NAME = "pitch"
    LOGGER = Logger(EXTRACTOR_NAME)
    MIN_ENERGY = 1e-12

    def extract(self, samples: np.ndarray, sample_rate: int,
                speech: np.ndarray = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Tracks pitch per frame

        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :param speech:      speech flags; voicing requires speech when given
        :return:            (pitch in Hz with NaN where unvoiced, voiced flags, peak correlation)
        """
        self.LOGGER.debug(f"Tracking pitch over {len(samples)} samples at {sample_rate} Hz")
        frame_count = self.frame_count(samples, sample_rate)
        strength = np.zeros(frame_count)
        lag = np.full(frame_count, np.nan)

        min_lag = int(math.ceil(sample_rate / Config.PITCH_MAX_HZ))
        max_lag = int(math.floor(sample_rate / Config.PITCH_MIN_HZ))

        for frames, block in self.frame_blocks(samples, sample_rate, Config.PITCH_WINDOW_MS):
            nccf = self.normalized_autocorrelation(block, min_lag - 1, max_lag + 1)
            strength[frames], lag[frames] = self.pick_peak(nccf, min_lag - 1)

        voiced = strength >= Config.VOICING_THRESHOLD
        if speech is not None:
            voiced &= speech
        voiced &= np.isfinite(lag)

        pitch = np.full(frame_count, np.nan)
        pitch[voiced] = np.clip(sample_rate / lag[voiced], Config.PITCH_MIN_HZ, Config.PITCH_MAX_HZ)

        self.LOGGER.debug(f"{int(voiced.sum())}/{frame_count} frames voiced")
        return pitch, voiced, strength

    def normalized_autocorrelation(self, block: np.ndarray, first_lag: int, last_lag: int) -> np.ndarray:
        """
        Lag correlations of each frame normalized by the overlapping energies

        :param block:       frames x window samples
        :param first_lag:   smallest lag, inclusive
        :param last_lag:    largest lag, inclusive
        :return:            frames x lags matrix in [-1, 1]
        """
        width = block.shape[1]
        x = block - block.mean(axis=1, keepdims=True)

        size = fft.next_fast_len(2 * width)
        spectrum = fft.rfft(x, size, axis=1)
        correlation = fft.irfft(spectrum.real ** 2 + spectrum.imag ** 2, size, axis=1)

        lags = np.arange(first_lag, last_lag + 1)
        energy = np.concatenate([np.zeros((len(x), 1)), np.cumsum(x * x, axis=1)], axis=1)
        head = energy[:, width - lags]
        tail = energy[:, [width]] - energy[:, lags]
        denominator = np.sqrt(head * tail)

        nccf = np.zeros((len(x), len(lags)))
        valid = denominator > self.MIN_ENERGY
        nccf[valid] = correlation[:, lags][valid] / denominator[valid]
        return np.clip(nccf, -1.0, 1.0)

    @staticmethod
    def pick_peak(nccf: np.ndarray, first_lag: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Selects the period lag of each frame
        The outermost columns of nccf only serve as interpolation neighbors

        :param nccf:        frames x lags correlations
        :param first_lag:   lag of column 0
        :return:            (peak correlation, fractional lag)
        """
        inner = nccf[:, 1:-1]
        best = inner.max(axis=1)
        local_max = (inner >= nccf[:, :-2]) & (inner >= nccf[:, 2:])
        candidates = local_max & (inner >= Config.PITCH_PEAK_SHARE * best[:, None]) & (inner > 0)

        index = np.where(candidates.any(axis=1), np.argmax(candidates, axis=1), np.argmax(inner, axis=1))
        rows = np.arange(len(nccf))
        left, centre, right = nccf[rows, index], nccf[rows, index + 1], nccf[rows, index + 2]

        curvature = left - 2.0 * centre + right
        shift = np.zeros(len(nccf))
        bent = curvature < 0
        shift[bent] = np.clip(0.5 * (left[bent] - right[bent]) / curvature[bent], -0.5, 0.5)

        return np.maximum(centre, 0.0), first_lag + 1 + index + shift
