from typing import Tuple

import numpy as np

from config import Config
from logger import Logger


class SpeechDetector:
    """
    Speaker-relative speech activity decision

    A frame is speech when its intensity reaches the channel's 95th percentile
    minus 25 dB; frames at the silence floor never count as speech
    """
    DETECTOR_NAME = "speech"
    LOGGER = Logger(DETECTOR_NAME)

    def detect(self, intensity: np.ndarray) -> Tuple[np.ndarray, float]:
        """
        :param intensity:   dB per frame
        :return:            (speech flags, threshold in dB)
        """
        if len(intensity) == 0:
            return np.zeros(0, dtype=bool), Config.SILENCE_FLOOR_DB

        threshold = float(np.percentile(intensity, Config.SPEECH_PERCENTILE)) - Config.SPEECH_MARGIN_DB
        speech = (intensity >= threshold) & (intensity > Config.SILENCE_FLOOR_DB)
        self.LOGGER.debug(f"Speech threshold {threshold:.2f} dB, {int(speech.sum())}/{len(speech)} frames")
        return speech, threshold
