from typing import List

import numpy as np
from scipy.signal import butter, sosfiltfilt

from config import Config
from extractors.base_extractor import BaseExtractor
from extractors.intensity_extractor import IntensityExtractor
from logger import Logger


class TiltExtractor(BaseExtractor):
    """
    Spectral tilt in dB per octave
    Inherits from BaseExtractor

    The channel is split into 1/3-octave bands centered on 100 Hz * 2^(k/3)
    up to 0.9 Nyquist by zero-phase Butterworth band-passes; per frame the
    band levels are regressed against k/3, giving the slope in dB per octave

    Constants:
        EXTRACTOR_NAME  name of the extractor
        LOGGER          logger instance
    """
    EXTRACTOR_NAME = "tilt"
    LOGGER = Logger(EXTRACTOR_NAME)

    @staticmethod
    def band_centers(sample_rate: int) -> np.ndarray:
        """
        :param sample_rate: rate in Hz
        :return:            1/3-octave band centers in Hz
        """
        limit = Config.TILT_NYQUIST_SHARE * sample_rate / 2.0
        count = int(np.floor(3.0 * np.log2(limit / Config.TILT_BASE_HZ) + 1e-9)) + 1
        return Config.TILT_BASE_HZ * 2.0 ** (np.arange(max(count, 0)) / 3.0)

    def filterbank(self, sample_rate: int) -> List[np.ndarray]:
        nyquist = sample_rate / 2.0
        bank = []
        for center in self.band_centers(sample_rate):
            low = center * 2.0 ** (-1.0 / 6.0)
            high = min(center * 2.0 ** (1.0 / 6.0), 0.99 * nyquist)
            bank.append(butter(Config.TILT_FILTER_ORDER // 2, [low, high], btype="bandpass",
                               fs=sample_rate, output="sos"))
        return bank

    def band_levels(self, samples: np.ndarray, sample_rate: int) -> np.ndarray:
        """
        Per-frame level of every band

        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            frame_count x bands matrix in dB, floored
        """
        bank = self.filterbank(sample_rate)
        levels = np.full((self.frame_count(samples, sample_rate), len(bank)), Config.SILENCE_FLOOR_DB)
        samples = np.asarray(samples, dtype=np.float64)

        for band, sos in enumerate(bank):
            padlen = min(3 * (2 * len(sos) + 1), len(samples) - 1)
            filtered = sosfiltfilt(sos, samples, padlen=max(padlen, 0))
            for frames, block in self.frame_blocks(filtered, sample_rate, Config.WINDOW_MS):
                levels[frames, band] = IntensityExtractor.to_db(np.mean(block * block, axis=1))
        return levels

    def extract(self, samples: np.ndarray, sample_rate: int) -> np.ndarray:
        """
        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            dB per octave per frame, NaN where fewer than 6 bands are live
        """
        self.LOGGER.debug(f"Tracking tilt over {len(samples)} samples at {sample_rate} Hz")
        tilt = self.tilt_from_band_levels(self.band_levels(samples, sample_rate))
        self.LOGGER.debug(f"Tilt defined on {int(np.isfinite(tilt).sum())}/{len(tilt)} frames")
        return tilt

    @staticmethod
    def tilt_from_band_levels(band_db: np.ndarray) -> np.ndarray:
        """
        Least-squares slope of band level against band index / 3
        Bands at the silence floor are left out of the fit

        :param band_db: bands vector or frames x bands matrix of levels in dB
        :return:        slope per frame (scalar array for a vector), NaN with too few live bands
        """
        levels = np.atleast_2d(np.asarray(band_db, dtype=np.float64))
        octaves = np.arange(levels.shape[1]) / 3.0
        live = (levels > Config.SILENCE_FLOOR_DB).astype(np.float64)

        count = live.sum(axis=1)
        sum_x = live @ octaves
        sum_xx = live @ (octaves * octaves)
        sum_y = (live * levels).sum(axis=1)
        sum_xy = (live * levels) @ octaves

        tilt = np.full(len(levels), np.nan)
        enough = count >= Config.TILT_MIN_BANDS
        spread = count * sum_xx - sum_x * sum_x
        tilt[enough] = (count * sum_xy - sum_x * sum_y)[enough] / spread[enough]
        return tilt if np.ndim(band_db) > 1 else tilt[0]
