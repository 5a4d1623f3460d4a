import numpy as np
from scipy import fft
from scipy.signal import get_window

from config import Config
from extractors.base_extractor import BaseExtractor
from logger import Logger


class CepstrumExtractor(BaseExtractor):
    """
    Real cepstrum of 25 ms Hamming-windowed frames
    c0 carries loudness and is dropped, c1..c12 are kept

    Constants:
        EXTRACTOR_NAME  name of the extractor
        LOGGER          logger instance
        FLOOR_MAGNITUDE spectral magnitude matching the silence floor
    """
    EXTRACTOR_NAME = "cepstrum"
    LOGGER = Logger(EXTRACTOR_NAME)
    FLOOR_MAGNITUDE = 10.0 ** (Config.SILENCE_FLOOR_DB / 20.0)

    def extract(self, samples: np.ndarray, sample_rate: int) -> np.ndarray:
        """
        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            frame_count x 12 coefficients
        """
        self.LOGGER.debug(f"Tracking cepstrum over {len(samples)} samples")
        cepstrum = np.zeros((self.frame_count(samples, sample_rate), Config.CEPSTRUM_ORDER))

        window = None
        for frames, block in self.frame_blocks(samples, sample_rate, Config.WINDOW_MS):
            if window is None:
                window = get_window("hamming", block.shape[1], fftbins=False)
                size = max(Config.CEPSTRUM_FFT_SIZE, fft.next_fast_len(block.shape[1]))
            magnitude = np.abs(fft.rfft(block * window, size, axis=1)) / window.sum()
            log_spectrum = np.log(np.maximum(magnitude, self.FLOOR_MAGNITUDE))
            cepstrum[frames] = fft.irfft(log_spectrum, size, axis=1)[:, 1:Config.CEPSTRUM_ORDER + 1]
        return cepstrum

