from typing import Dict, Iterable, Tuple

import numpy as np

from errors import RangeOutsideRecordingException
from extractors.signal_analyzer import SignalAnalyzer
from features.base_feature import BaseFeature, WindowSet
from features.cepstral_features import Enunciated, Lengthened, Reduced
from features.energy_features import Creakiness, SpeakingRate, SpeechFraction, Volume, VoicingFraction
from features.pitch_features import HighPitch, LowPitch, NarrowPitch, PeakDisalignment, WidePitch
from features.tilt_features import FlatTilt, MidTilt, SpectralTilt, TiltRange
from logger import Logger
from records.features import COLUMN_COUNT, FEATURE_COLUMNS, ContextSpan, FeatureKind, FeatureMatrix, FeatureVector
from records.recording import AudioRecording, FrameClock
from records.signals import BaseSignals, SpeakerBaseline
from validator import Validator


class FeatureAssembler:
    """
    Builds 85-dimensional context vectors: 17 feature kinds over the five
    spans around each frame, kind-major and span-minor

    Constants:
        ASSEMBLER_NAME  name of the assembler
        LOGGER          logger instance
        FEATURES        evaluator per kind
    """
    ASSEMBLER_NAME = "assembler"
    LOGGER = Logger(ASSEMBLER_NAME)

    FEATURES: Dict[FeatureKind, BaseFeature] = {
        feature.KIND: feature for feature in (
            LowPitch(), HighPitch(), Volume(), NarrowPitch(), WidePitch(), Creakiness(),
            VoicingFraction(), Reduced(), Enunciated(), Lengthened(), SpeakingRate(),
            SpeechFraction(), PeakDisalignment(), SpectralTilt(), TiltRange(), FlatTilt(), MidTilt(),
        )
    }

    def __init__(self, analyzer: SignalAnalyzer = None):
        self.analyzer = analyzer or SignalAnalyzer()

    def feature_over_window(self, kind: FeatureKind, start: int, stop: int, signals: BaseSignals,
                            baseline: SpeakerBaseline) -> Tuple[float, float]:
        """
        Evaluates one kind over a half-open frame range

        :param kind:        feature kind
        :param start:       first frame, may precede the channel
        :param stop:        frame after the last, may exceed the channel
        :param signals:     BaseSignals of the channel
        :param baseline:    the channel speaker's baseline
        :return:            (value, coverage)
        """
        windows = WindowSet([start], max(stop - start, 0), signals.frame_count)
        value, coverage = self.FEATURES[kind].evaluate_windows(windows, signals, baseline)
        return float(value[0]), float(coverage[0])

    def feature_rows(self, frames: Iterable[int], signals: BaseSignals,
                     baseline: SpeakerBaseline) -> Tuple[np.ndarray, np.ndarray]:
        """
        Context features of many frames at once

        :param frames:      predicted frame indices
        :param signals:     BaseSignals of the channel
        :param baseline:    the channel speaker's baseline
        :return:            (values, coverage), each rows x 85
        """
        frames = np.asarray(list(frames), dtype=np.int64)
        values = np.zeros((len(frames), COLUMN_COUNT))
        coverage = np.zeros((len(frames), COLUMN_COUNT))
        spans = list(ContextSpan)

        for span_index, span in enumerate(spans):
            windows = WindowSet(frames + span.start_offset, span.width, signals.frame_count)
            for kind_index, kind in enumerate(FeatureKind):
                column = kind_index * len(spans) + span_index
                values[:, column], coverage[:, column] = self.FEATURES[kind].evaluate_windows(
                    windows, signals, baseline)
        return values, coverage

    def assemble_vector(self, frame: int, channel: str, signals: BaseSignals,
                        baseline: SpeakerBaseline) -> FeatureVector:
        values, coverage = self.feature_rows([frame], signals, baseline)
        return FeatureVector(values[0], coverage[0], frame, channel, baseline.unreliable)

    def feature_matrix(self, recording: AudioRecording, channel: str, start_ms: float, end_ms: float,
                       signals: BaseSignals = None, baseline: SpeakerBaseline = None) -> FeatureMatrix:
        """
        One row per frame whose start lies in the annotated range

        :raises RangeOutsideRecordingException: if the range is not within the recording

        :param recording:   AudioRecording instance
        :param channel:     left or right
        :param start_ms:    annotated range start
        :param end_ms:      annotated range end, exclusive
        :param signals:     precomputed BaseSignals, analyzed here when None
        :param baseline:    precomputed baseline, built here when None
        :return:            FeatureMatrix instance
        """
        clock = recording.clock
        if not Validator.interval_validator(start_ms, end_ms) or end_ms > clock.length_ms:
            self.LOGGER.error(f"{recording.conversation_id}: range [{start_ms}, {end_ms}) ms outside recording")
            raise RangeOutsideRecordingException(recording.conversation_id, start_ms, end_ms, clock.length_ms)

        if signals is None:
            signals = self.analyzer.analyze(recording.channel(channel), recording.sample_rate)
        if baseline is None:
            baseline = self.analyzer.build_baseline(signals)

        first = FrameClock.first_frame_at_or_after(start_ms)
        stop = min(FrameClock.first_frame_at_or_after(end_ms), clock.frame_count)
        frames = np.arange(first, max(stop, first))

        self.LOGGER.debug(f"Assembling {len(frames)} rows for {recording.conversation_id}/{channel}")
        values, coverage = self.feature_rows(frames, signals, baseline)
        return FeatureMatrix(recording.conversation_id, channel, frames, values, coverage, baseline.unreliable)

    @staticmethod
    def column_mask(patterns) -> np.ndarray:
        """
        :param patterns:    glob patterns such as sr_* or cr_D
        :return:            boolean mask over the 85 columns, True where excluded
        """
        return np.array([Validator.column_excluded(column, patterns) for column in FEATURE_COLUMNS], dtype=bool)

    @classmethod
    def apply_mask(cls, values: np.ndarray, patterns) -> np.ndarray:
        """
        Zeroes excluded columns, leaving the grid shape intact
        """
        mask = cls.column_mask(patterns)
        if not mask.any():
            return values
        values = np.array(values, dtype=np.float64)
        values[..., mask] = 0.0
        return values
