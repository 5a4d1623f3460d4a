import numpy as np

from config import Config
from extractors.cepstrum_extractor import CepstrumExtractor
from extractors.creak_extractor import CreakExtractor
from extractors.intensity_extractor import IntensityExtractor
from extractors.pitch_extractor import PitchExtractor
from extractors.speech_detector import SpeechDetector
from extractors.tilt_extractor import TiltExtractor
from logger import Logger
from records.signals import BaseSignals, SpeakerBaseline


class SignalAnalyzer:
    """
    Runs every low-level tracker over one channel and derives the speaker baseline

    Trackers run in dependency order: intensity, speech, pitch, cepstrum, tilt, creak

    Constants:
        ANALYZER_NAME   name of the analyzer
        LOGGER          logger instance
        PERCENTILES     pitch percentiles kept in the baseline
    """
    ANALYZER_NAME = "analyzer"
    LOGGER = Logger(ANALYZER_NAME)
    PERCENTILES = (10, 25, 50, 75, 90)

    def __init__(self):
        self.intensity = IntensityExtractor()
        self.speech = SpeechDetector()
        self.pitch = PitchExtractor()
        self.cepstrum = CepstrumExtractor()
        self.tilt = TiltExtractor()
        self.creak = CreakExtractor()

    def analyze(self, samples: np.ndarray, sample_rate: int) -> BaseSignals:
        """
        Computes the base signals of a channel

        :param samples:     channel samples normalized to [-1, 1]
        :param sample_rate: rate in Hz
        :return:            BaseSignals instance
        """
        self.LOGGER.debug(f"Analyzing {len(samples)} samples at {sample_rate} Hz")
        intensity = self.intensity.extract(samples, sample_rate)
        speech, threshold = self.speech.detect(intensity)
        pitch, voiced, _ = self.pitch.extract(samples, sample_rate, speech)
        cepstrum = self.cepstrum.extract(samples, sample_rate)
        tilt = self.tilt.extract(samples, sample_rate)
        creak = self.creak.extract(samples, sample_rate, pitch, voiced)

        signals = BaseSignals(
            pitch=pitch,
            intensity=intensity,
            cepstrum=cepstrum,
            tilt=tilt,
            voiced=voiced,
            speech=speech,
            creak=creak,
            speech_threshold=threshold,
        )
        self.LOGGER.debug(f"Signals: {signals.get_dict()}")
        return signals

    def build_baseline(self, signals: BaseSignals) -> SpeakerBaseline:
        """
        Per-speaker normalization statistics
        Statistics over an empty frame set are NaN; fewer than 100 voiced or
        speech frames flag the baseline as unreliable

        :param signals: BaseSignals of a full channel
        :return:        SpeakerBaseline instance
        """
        voiced = signals.voiced
        speech = signals.speech
        voiced_count = int(voiced.sum())
        speech_count = int(speech.sum())

        if voiced_count:
            percentiles = np.percentile(signals.pitch[voiced], self.PERCENTILES)
            voiced_cepstra = signals.cepstrum[voiced]
            mean_cepstrum = voiced_cepstra.mean(axis=0)
            cepstral_distance = float(np.median(np.linalg.norm(voiced_cepstra - mean_cepstrum, axis=1)))
        else:
            percentiles = np.full(len(self.PERCENTILES), np.nan)
            mean_cepstrum = np.zeros(Config.CEPSTRUM_ORDER)
            cepstral_distance = float("nan")

        intensity = signals.intensity[speech]
        flux = signals.flux()[speech]
        flux = flux[np.isfinite(flux)]
        tilt = signals.tilt[speech]
        tilt = tilt[np.isfinite(tilt)]

        baseline = SpeakerBaseline(
            pitch_percentiles=percentiles,
            intensity_mean=float(intensity.mean()) if speech_count else float("nan"),
            intensity_sd=float(intensity.std()) if speech_count else float("nan"),
            mean_cepstrum=mean_cepstrum,
            cepstral_distance=cepstral_distance,
            flux_median=float(np.median(flux)) if len(flux) else float("nan"),
            tilt_median=float(np.median(tilt)) if len(tilt) else float("nan"),
            tilt_iqr=float(np.subtract(*np.percentile(tilt, [75, 25]))) if len(tilt) else float("nan"),
            speech_threshold=signals.speech_threshold,
            voiced_frames=voiced_count,
            speech_frames=speech_count,
            unreliable=min(voiced_count, speech_count) < Config.BASELINE_MIN_FRAMES,
        )

        if baseline.unreliable:
            self.LOGGER.warning(f"Unreliable baseline: {voiced_count} voiced, {speech_count} speech frames")
        else:
            self.LOGGER.debug(f"Baseline: {baseline.get_dict()}")
        return baseline
