import numpy as np

from config import Config
from extractors.base_extractor import BaseExtractor
from logger import Logger


class IntensityExtractor(BaseExtractor):
    """
    Frame energy in dB relative to full scale
    Mean square over an unweighted 25 ms window, floored at the silence floor

    Constants:
        EXTRACTOR_NAME  name of the extractor
        LOGGER          logger instance
        FLOOR_POWER     mean square matching the silence floor
    """
    EXTRACTOR_NAME = "intensity"
    LOGGER = Logger(EXTRACTOR_NAME)
    FLOOR_POWER = 10.0 ** (Config.SILENCE_FLOOR_DB / 10.0)

    def extract(self, samples: np.ndarray, sample_rate: int) -> np.ndarray:
        """
        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            dB per frame
        """
        self.LOGGER.debug(f"Tracking intensity over {len(samples)} samples")
        intensity = np.full(self.frame_count(samples, sample_rate), Config.SILENCE_FLOOR_DB)
        for frames, block in self.frame_blocks(samples, sample_rate, Config.WINDOW_MS):
            power = np.mean(block * block, axis=1)
            intensity[frames] = self.to_db(power)
        return intensity

    @classmethod
    def to_db(cls, power: np.ndarray) -> np.ndarray:
        return np.maximum(10.0 * np.log10(np.maximum(power, cls.FLOOR_POWER)), Config.SILENCE_FLOOR_DB)
