from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from records.base_record import BaseRecord


@dataclass(frozen=True, eq=False)
class BaseSignals(BaseRecord):
    """
    Per-frame low-level signals of one channel

    Attributes:
        pitch       Hz, NaN where unvoiced
        intensity   dB relative to full scale, floored at the silence floor
        cepstrum    frame_count x 12 cepstral coefficients c1..c12
        tilt        dB per octave, NaN where too few bands are live
        voiced      voicing flags
        speech      speech activity flags
        creak       creak score in [0, 1]
        speech_threshold    dB threshold the speech flags were derived with
    """
    pitch: np.ndarray
    intensity: np.ndarray
    cepstrum: np.ndarray
    tilt: np.ndarray
    voiced: np.ndarray
    speech: np.ndarray
    creak: np.ndarray
    speech_threshold: float = float("nan")

    @property
    def frame_count(self) -> int:
        return len(self.intensity)

    def flux(self) -> np.ndarray:
        """
        Euclidean distance between consecutive cepstral vectors
        Frame 0 has no predecessor and gets NaN

        :return: float array of length frame_count
        """
        flux = np.full(self.frame_count, np.nan)
        if self.frame_count > 1:
            flux[1:] = np.linalg.norm(np.diff(self.cepstrum, axis=0), axis=1)
        return flux

    def get_dict(self) -> dict:
        return {
            "frames": self.frame_count,
            "voiced": int(self.voiced.sum()),
            "speech": int(self.speech.sum()),
            "tilted": int(np.isfinite(self.tilt).sum()),
        }


@dataclass(frozen=True, eq=False)
class SpeakerBaseline(BaseRecord):
    """
    Per-speaker normalization statistics

    Attributes:
        pitch_percentiles   p10, p25, p50, p75, p90 in Hz over voiced frames
        intensity_mean      dB over speech frames
        intensity_sd        dB over speech frames
        mean_cepstrum       mean c1..c12 over voiced frames
        cepstral_distance   median distance of voiced frames to mean_cepstrum
        flux_median         median cepstral flux over speech frames
        tilt_median         dB per octave over speech frames
        tilt_iqr            dB per octave over speech frames
        speech_threshold    dB threshold used by speech detection
        voiced_frames       qualifying voiced frame count
        speech_frames       qualifying speech frame count
        unreliable          True when fewer frames qualified than required
    """
    pitch_percentiles: np.ndarray
    intensity_mean: float
    intensity_sd: float
    mean_cepstrum: np.ndarray
    cepstral_distance: float
    flux_median: float
    tilt_median: float
    tilt_iqr: float
    speech_threshold: float
    voiced_frames: int
    speech_frames: int
    unreliable: bool

    @property
    def p10(self) -> float:
        return float(self.pitch_percentiles[0])

    @property
    def p25(self) -> float:
        return float(self.pitch_percentiles[1])

    @property
    def p50(self) -> float:
        return float(self.pitch_percentiles[2])

    @property
    def p75(self) -> float:
        return float(self.pitch_percentiles[3])

    @property
    def p90(self) -> float:
        return float(self.pitch_percentiles[4])

    def get_dict(self) -> dict:
        return {
            "pitch_percentiles": [round(float(p), 2) for p in self.pitch_percentiles],
            "intensity_mean": self.intensity_mean,
            "intensity_sd": self.intensity_sd,
            "tilt_median": self.tilt_median,
            "tilt_iqr": self.tilt_iqr,
            "speech_threshold": self.speech_threshold,
            "voiced_frames": self.voiced_frames,
            "speech_frames": self.speech_frames,
            "unreliable": self.unreliable,
        }
