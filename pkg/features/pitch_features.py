import numpy as np

from features.base_feature import BaseFeature, WindowSet
from records.features import FeatureKind
from records.signals import BaseSignals, SpeakerBaseline


class VoicedFeature(BaseFeature):
    """
    Features computed over the voiced frames of a window
    """

    def qualifying(self, signals: BaseSignals) -> np.ndarray:
        return signals.voiced


class LowPitch(VoicedFeature):
    """
    tl: how far pitch falls below the speaker's 25th percentile,
    scaled so that the 10th percentile scores 1
    """
    KIND = FeatureKind.TL

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        depth = self.spread(baseline.p25 - baseline.p10)
        return self.clamp01((baseline.p25 - signals.pitch) / depth)


class HighPitch(VoicedFeature):
    """
    th: mirror of tl above the 75th percentile, 1 at the 90th
    """
    KIND = FeatureKind.TH

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        height = self.spread(baseline.p90 - baseline.p75)
        return self.clamp01((signals.pitch - baseline.p75) / height)


class PitchRange(VoicedFeature):
    """
    Interquartile pitch range of a window relative to the speaker's
    """

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.pitch

    def relative_range(self, values, mask, count, baseline: SpeakerBaseline) -> np.ndarray:
        ratio = np.zeros(len(values))
        rows = count > 0
        if rows.any():
            pitch = np.where(mask[rows], values[rows], np.nan)
            upper, lower = np.nanpercentile(pitch, [75, 25], axis=1)
            ratio[rows] = (upper - lower) / self.spread(baseline.p75 - baseline.p25)
        return ratio


class NarrowPitch(PitchRange):
    """
    np: 1 - window IQR / speaker IQR, in [0, 1]
    """
    KIND = FeatureKind.NP

    def reduce(self, values, mask, count, windows, signals, baseline) -> np.ndarray:
        return self.clamp01(1.0 - self.relative_range(values, mask, count, baseline))


class WidePitch(PitchRange):
    """
    wp: window IQR / speaker IQR - 1, floored at 0
    """
    KIND = FeatureKind.WP

    def reduce(self, values, mask, count, windows, signals, baseline) -> np.ndarray:
        return np.maximum(self.relative_range(values, mask, count, baseline) - 1.0, 0.0)


class PeakDisalignment(VoicedFeature):
    """
    pd: distance between the window's pitch peak (over voiced frames) and its
    intensity peak (over speech frames), as a share of the window length;
    ties resolve to the earliest frame
    """
    KIND = FeatureKind.PD

    def frame_values(self, signals: BaseSignals, baseline: SpeakerBaseline) -> np.ndarray:
        return signals.pitch

    def reduce(self, values, mask, count, windows: WindowSet, signals, baseline) -> np.ndarray:
        pitch_peak = np.argmax(np.where(mask, values, -np.inf), axis=1)

        speech = windows.select(signals.speech)
        intensity = windows.gather(signals.intensity)
        intensity_peak = np.argmax(np.where(speech, intensity, -np.inf), axis=1)

        return np.abs(pitch_peak - intensity_peak) / float(windows.width)
