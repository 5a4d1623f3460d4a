import numpy as np

from features.base_feature import BaseFeature
from records.features import FeatureKind
from records.signals import BaseSignals, SpeakerBaseline


class Volume(BaseFeature):
    """
    vo: mean speech-frame intensity, z-scored by the speaker's speech intensity
    """
    KIND = FeatureKind.VO

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return signals.speech

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return (signals.intensity - baseline.intensity_mean) / self.spread(baseline.intensity_sd)


class SpeakingRate(BaseFeature):
    """
    sr: mean absolute intensity change between consecutive speech frames, in dB
    """
    KIND = FeatureKind.SR

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return self.after_speech(signals)

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        change = np.zeros(signals.frame_count)
        change[1:] = np.abs(np.diff(signals.intensity))
        return change


class SpeechFraction(BaseFeature):
    """
    sf: share of the window's in-channel frames that are speech
    Silence is informative here, so every in-channel frame qualifies
    """
    KIND = FeatureKind.SF

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return np.ones(signals.frame_count, dtype=bool)

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.speech.astype(np.float64)


class VoicingFraction(BaseFeature):
    """
    vf: voiced frames / speech frames
    """
    KIND = FeatureKind.VF

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return signals.speech

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.voiced.astype(np.float64)


class Creakiness(BaseFeature):
    KIND = FeatureKind.CR

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return signals.speech

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.creak
