import numpy as np
import pytest

from config import Config
from extractors.signal_analyzer import SignalAnalyzer
from records.region import ReductionRegion
from records.signals import BaseSignals, SpeakerBaseline


@pytest.fixture
def analyzer():
    return SignalAnalyzer()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_signals():
    """
    Hand-built base signals: silent, unvoiced and untilted unless overridden
    """
    def build(frame_count, **overrides):
        values = {
            "pitch": np.full(frame_count, np.nan),
            "intensity": np.full(frame_count, Config.SILENCE_FLOOR_DB),
            "cepstrum": np.zeros((frame_count, Config.CEPSTRUM_ORDER)),
            "tilt": np.full(frame_count, np.nan),
            "voiced": np.zeros(frame_count, dtype=bool),
            "speech": np.zeros(frame_count, dtype=bool),
            "creak": np.zeros(frame_count),
        }
        values.update(overrides)
        return BaseSignals(**values)
    return build


@pytest.fixture
def make_baseline():
    def build(**overrides):
        values = {
            "pitch_percentiles": np.array([100.0, 120.0, 150.0, 180.0, 200.0]),
            "intensity_mean": -20.0,
            "intensity_sd": 5.0,
            "mean_cepstrum": np.zeros(Config.CEPSTRUM_ORDER),
            "cepstral_distance": 1.0,
            "flux_median": 1.0,
            "tilt_median": -6.0,
            "tilt_iqr": 2.0,
            "speech_threshold": -40.0,
            "voiced_frames": 500,
            "speech_frames": 500,
            "unreliable": False,
        }
        values.update(overrides)
        return SpeakerBaseline(**values)
    return build


@pytest.fixture
def region_file(tmp_path):
    """
    Writes CSV text into a region file and returns its path
    """
    def write(text, name="regions.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write


@pytest.fixture
def level_regions():
    """
    Consecutive 100 ms regions, one per level
    """
    def build(levels, channel="left", length_ms=100.0):
        return [ReductionRegion(channel, index * length_ms, (index + 1) * length_ms, int(level))
                for index, level in enumerate(levels)]
    return build
