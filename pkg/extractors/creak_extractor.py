import math

import numpy as np
from scipy.signal import find_peaks

from config import Config
from extractors.base_extractor import BaseExtractor
from logger import Logger


class CreakExtractor(BaseExtractor):
    """
    Creakiness score in [0, 1], a jitter and low-pitch proxy
    Inherits from BaseExtractor

    Periods are measured between waveform peaks of each voiced 40 ms frame;
    the irregularity term is the mean absolute relative period difference over
    the surrounding +-2 frames, the low-pitch term measures how far pitch falls
    below the speaker's 10th percentile. The score averages both, 0 when unvoiced

    Constants:
        EXTRACTOR_NAME  name of the extractor
        LOGGER          logger instance
        PEAK_HEIGHT     share of the frame's maximum a period peak must reach
    """
    EXTRACTOR_NAME = "creak"
    LOGGER = Logger(EXTRACTOR_NAME)
    PEAK_HEIGHT = 0.6

    def __init__(self):
        self.LOGGER.debug("Creak is estimated from jitter and low pitch, not from a perceptual model")

    def extract(self, samples: np.ndarray, sample_rate: int, pitch: np.ndarray = None,
                voiced: np.ndarray = None) -> np.ndarray:
        """
        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :param pitch:       Hz per frame, NaN where unvoiced
        :param voiced:      voicing flags, derived from pitch when None
        :return:            score per frame
        """
        frame_count = self.frame_count(samples, sample_rate)
        if pitch is None:
            pitch = np.full(frame_count, np.nan)
        if voiced is None:
            voiced = np.isfinite(pitch)
        score = np.zeros(frame_count)
        if not voiced.any():
            return score

        jitter = self.frame_jitter(samples, sample_rate, voiced)
        irregularity = self.context_mean(jitter, voiced)
        jitter_term = np.clip(np.nan_to_num(irregularity) / Config.CREAK_JITTER_SCALE, 0.0, 1.0)

        p10 = float(np.percentile(pitch[voiced], 10))
        low_term = np.zeros(frame_count)
        low_term[voiced] = np.clip((p10 - pitch[voiced]) / (Config.CREAK_LOW_PITCH_SCALE * p10), 0.0, 1.0)

        score[voiced] = 0.5 * (jitter_term[voiced] + low_term[voiced])
        self.LOGGER.debug(f"Mean creak over voiced frames {score[voiced].mean():.3f}")
        return score

    def frame_jitter(self, samples: np.ndarray, sample_rate: int, voiced: np.ndarray) -> np.ndarray:
        """
        Relative period irregularity inside each voiced frame

        :return: jitter per frame, NaN where unvoiced or fewer than three peaks were found
        """
        jitter = np.full(len(voiced), np.nan)
        distance = max(1, int(math.floor(sample_rate / Config.PITCH_MAX_HZ)))

        for frames, block in self.frame_blocks(samples, sample_rate, Config.PITCH_WINDOW_MS):
            for offset in np.flatnonzero(voiced[frames]):
                frame = block[offset]
                top = frame.max()
                if top <= 0:
                    continue
                peaks, _ = find_peaks(frame, height=self.PEAK_HEIGHT * top, distance=distance)
                if len(peaks) < 3:
                    continue
                periods = np.diff(peaks).astype(np.float64)
                jitter[frames.start + offset] = np.abs(np.diff(periods)).mean() / periods.mean()
        return jitter

    @staticmethod
    def context_mean(jitter: np.ndarray, voiced: np.ndarray) -> np.ndarray:
        """
        Mean of defined jitter values over the +-2 frame neighborhood of each voiced frame
        """
        context = Config.CREAK_CONTEXT_FRAMES
        defined = np.isfinite(jitter) & voiced
        values = np.where(defined, jitter, 0.0)

        kernel = np.ones(2 * context + 1)
        totals = np.convolve(np.pad(values, context), kernel, mode="valid")
        counts = np.convolve(np.pad(defined.astype(np.float64), context), kernel, mode="valid")

        mean = np.full(len(jitter), np.nan)
        np.divide(totals, counts, out=mean, where=counts > 0)
        return mean
