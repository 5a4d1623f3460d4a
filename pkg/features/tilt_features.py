import numpy as np

from features.base_feature import BaseFeature
from records.features import FeatureKind
from records.signals import BaseSignals, SpeakerBaseline


class TiltFeature(BaseFeature):
    """
    Features over speech frames that carry a tilt value
    """

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return self.tilted_speech(signals)

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.tilt


class SpectralTilt(TiltFeature):
    """
    st: mean tilt in dB per octave
    """
    KIND = FeatureKind.ST


class TiltRange(TiltFeature):
    """
    tr: max - min tilt within the window
    """
    KIND = FeatureKind.TR

    def reduce(self, values, mask, count, windows, signals, baseline) -> np.ndarray:
        highest = np.where(mask, values, -np.inf).max(axis=1)
        lowest = np.where(mask, values, np.inf).min(axis=1)
        return highest - lowest


class FlatTilt(TiltFeature):
    """
    tf: how much flatter than typical, (tilt - median) / IQR floored at 0
    """
    KIND = FeatureKind.TF

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return np.maximum((signals.tilt - baseline.tilt_median) / self.spread(baseline.tilt_iqr), 0.0)


class MidTilt(TiltFeature):
    """
    tm: closeness to the speaker's median tilt, 1 - |tilt - median| / IQR in [0, 1]
    """
    KIND = FeatureKind.TM

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        distance = np.abs(signals.tilt - baseline.tilt_median) / self.spread(baseline.tilt_iqr)
        return self.clamp01(1.0 - distance)
