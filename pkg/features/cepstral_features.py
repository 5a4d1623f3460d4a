import numpy as np

from features.base_feature import BaseFeature
from records.features import FeatureKind
from records.signals import BaseSignals, SpeakerBaseline


class CepstralDistance(BaseFeature):
    """
    Features on the distance d of each voiced frame's cepstrum to the
    speaker's mean cepstrum, relative to the speaker's median distance
    """

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return signals.voiced

    def relative_distance(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        distance = np.linalg.norm(signals.cepstrum - baseline.mean_cepstrum, axis=1)
        return distance / self.spread(baseline.cepstral_distance)


class Reduced(CepstralDistance):
    """
    re: closeness to the average spectrum, exp(-d / median d)
    """
    KIND = FeatureKind.RE

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return np.exp(-self.relative_distance(signals, baseline))


class Enunciated(CepstralDistance):
    """
    en: distinctness from the average spectrum, d / median d - 1 floored at 0
    """
    KIND = FeatureKind.EN

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return np.maximum(self.relative_distance(signals, baseline) - 1.0, 0.0)


class Lengthened(BaseFeature):
    """
    le: inverse cepstral flux, 1 / (1 + flux / median flux), over speech frames
    with a speech predecessor
    """
    KIND = FeatureKind.LE

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return self.after_speech(signals)

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        flux = np.nan_to_num(signals.flux(), nan=0.0)
        return 1.0 / (1.0 + flux / self.spread(baseline.flux_median))
