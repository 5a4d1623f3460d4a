import numpy as np
import pytest

from config import Config
from errors import RangeOutsideRecordingException
from features.assembler import FeatureAssembler
from features.base_feature import WindowSet
from records.features import COLUMN_COUNT, FEATURE_COLUMNS, ContextSpan, FeatureKind, column_index
from records.recording import AudioRecording
from synthesis import generators

SR = generators.SAMPLE_RATE


@pytest.fixture
def assembler():
    return FeatureAssembler()


@pytest.fixture
def steady_tone(analyzer):
    """
    200 Hz tone built from one repeated period, so every frame sees the same samples
    """
    period = 0.5 * np.sin(2.0 * np.pi * np.arange(80) / 80.0)
    signals = analyzer.analyze(np.tile(period, 600), SR)
    return signals, analyzer.build_baseline(signals)


def test_column_grid_is_kind_major():
    assert COLUMN_COUNT == 85
    assert FEATURE_COLUMNS[:6] == ["tl_A", "tl_B", "tl_C", "tl_D", "tl_E", "th_A"]
    assert FEATURE_COLUMNS[-1] == "tm_E"
    assert column_index(FeatureKind.VO, ContextSpan.C) == FEATURE_COLUMNS.index("vo_C")


def test_span_frame_ranges():
    assert ContextSpan.A.frame_range(100) == (75, 90)
    assert ContextSpan.B.frame_range(100) == (90, 98)
    assert ContextSpan.C.frame_range(100) == (98, 102)
    assert ContextSpan.D.frame_range(100) == (102, 110)
    assert ContextSpan.E.frame_range(100) == (110, 125)


def test_window_set_masks_positions_outside_the_channel():
    windows = WindowSet([-2, 8], 4, 10)
    assert windows.inside.tolist() == [[False, False, True, True], [True, True, False, False]]
    assert windows.index.tolist() == [[0, 0, 0, 1], [8, 9, 9, 9]]


def test_voicing_fraction(assembler, make_signals, make_baseline):
    speech = np.zeros(40, dtype=bool)
    speech[:20] = True
    voiced = speech.copy()
    signals = make_signals(40, speech=speech, voiced=voiced, pitch=np.where(voiced, 150.0, np.nan))

    assert assembler.feature_over_window(FeatureKind.VF, 0, 20, signals, make_baseline()) == (1.0, 1.0)

    voiced[10:20] = False
    signals = make_signals(40, speech=speech, voiced=voiced)
    value, coverage = assembler.feature_over_window(FeatureKind.VF, 0, 20, signals, make_baseline())
    assert value == pytest.approx(0.5)
    assert coverage == 1.0


def test_speech_fraction_of_silence_is_informative(assembler, make_signals, make_baseline):
    signals = make_signals(50)
    assert assembler.feature_over_window(FeatureKind.SF, 10, 30, signals, make_baseline()) == (0.0, 1.0)


def test_tilt_mean_and_range(assembler, make_signals, make_baseline):
    tilt = np.full(20, np.nan)
    tilt[10:13] = [-6.0, -4.0, -2.0]
    speech = np.zeros(20, dtype=bool)
    speech[8:15] = True
    signals = make_signals(20, tilt=tilt, speech=speech)

    st, coverage = assembler.feature_over_window(FeatureKind.ST, 8, 16, signals, make_baseline())
    tr, _ = assembler.feature_over_window(FeatureKind.TR, 8, 16, signals, make_baseline())
    assert st == pytest.approx(-4.0)
    assert tr == pytest.approx(4.0)
    assert coverage == pytest.approx(3 / 8)


def test_pitch_height_features(assembler, make_signals, make_baseline):
    pitch = np.array([100.0, 110.0, 150.0, 190.0, 220.0])
    signals = make_signals(5, pitch=pitch, voiced=np.ones(5, dtype=bool), speech=np.ones(5, dtype=bool))
    baseline = make_baseline()

    tl = [assembler.feature_over_window(FeatureKind.TL, i, i + 1, signals, baseline)[0] for i in range(5)]
    th = [assembler.feature_over_window(FeatureKind.TH, i, i + 1, signals, baseline)[0] for i in range(5)]
    assert tl == pytest.approx([1.0, 0.5, 0.0, 0.0, 0.0])
    assert th == pytest.approx([0.0, 0.0, 0.0, 0.5, 1.0])


def test_peak_disalignment(assembler, make_signals, make_baseline):
    pitch = np.array([120.0, 150.0, 130.0, 125.0, 110.0])
    intensity = np.array([-30.0, -25.0, -22.0, -20.0, -28.0])
    flags = np.ones(5, dtype=bool)
    signals = make_signals(5, pitch=pitch, intensity=intensity, voiced=flags, speech=flags)

    value, _ = assembler.feature_over_window(FeatureKind.PD, 0, 5, signals, make_baseline())
    assert value == pytest.approx(2 / 5)


def test_window_without_qualifying_frames_is_neutral(assembler, make_signals, make_baseline):
    signals = make_signals(30)
    for kind in FeatureKind:
        if kind is FeatureKind.SF:
            continue
        assert assembler.feature_over_window(kind, 5, 20, signals, make_baseline()) == (0.0, 0.0)


def test_first_frame_has_empty_leading_spans(assembler, steady_tone):
    signals, baseline = steady_tone
    vector = assembler.assemble_vector(0, "left", signals, baseline)

    leading = [column_index(kind, span) for kind in FeatureKind for span in (ContextSpan.A, ContextSpan.B)]
    assert len(leading) == 34
    assert np.all(vector.values[leading] == 0.0)
    assert np.all(vector.coverage[leading] == 0.0)
    assert vector.value(FeatureKind.SF, ContextSpan.C) == 1.0


def test_steady_signal_gives_symmetric_spans(assembler, steady_tone):
    signals, baseline = steady_tone
    vector = assembler.assemble_vector(150, "left", signals, baseline)

    for kind in FeatureKind:
        before = vector.value(kind, ContextSpan.A)
        after = vector.value(kind, ContextSpan.E)
        assert before == pytest.approx(after, rel=1e-6, abs=1e-6), kind


def test_vectors_match_single_window_evaluation(assembler, analyzer, rng):
    samples = np.concatenate([
        generators.harmonic_complex(np.linspace(110.0, 160.0, SR), 1.0),
        generators.silence(0.4),
        generators.white_noise(0.5, rng, rms=0.05),
        generators.harmonic_complex(220.0, 1.1, amplitude=0.3),
    ])
    signals = analyzer.analyze(samples, SR)
    baseline = analyzer.build_baseline(signals)

    for frame in rng.integers(0, signals.frame_count, 100):
        vector = assembler.assemble_vector(int(frame), "right", signals, baseline)
        for kind in FeatureKind:
            for span in ContextSpan:
                low, high = Config.SPANS_MS[span.value]
                start, stop = frame + low // Config.HOP_MS, frame + high // Config.HOP_MS
                value, coverage = assembler.feature_over_window(kind, int(start), int(stop), signals, baseline)
                assert vector.value(kind, span) == value
                assert vector.coverage[column_index(kind, span)] == coverage


def test_feature_matrix_covers_the_annotated_range(assembler, make_signals, make_baseline):
    recording = AudioRecording("long", SR, np.zeros(60 * SR), np.zeros(60 * SR))
    signals = make_signals(recording.frame_count)

    matrix = assembler.feature_matrix(recording, "left", 0.0, 60000.0, signals, make_baseline())
    assert matrix.values.shape == (6000, COLUMN_COUNT)
    assert matrix.frames[0] == 0 and matrix.frames[-1] == 5999
    assert np.all(np.isfinite(matrix.values))

    part = assembler.feature_matrix(recording, "left", 1005.0, 2000.0, signals, make_baseline())
    assert part.frames[0] == 101 and len(part) == 99


def test_feature_matrix_rejects_ranges_past_the_recording(assembler, make_signals, make_baseline):
    recording = AudioRecording("short", SR, np.zeros(SR), np.zeros(SR))
    with pytest.raises(RangeOutsideRecordingException):
        assembler.feature_matrix(recording, "left", 0.0, 1500.0, make_signals(100), make_baseline())
    with pytest.raises(RangeOutsideRecordingException):
        assembler.feature_matrix(recording, "left", 500.0, 500.0, make_signals(100), make_baseline())


def test_unreliable_baseline_is_carried_on_the_vector(assembler, make_signals, make_baseline):
    vector = assembler.assemble_vector(5, "left", make_signals(10), make_baseline(unreliable=True))
    assert vector.unreliable
    assert np.all(np.isfinite(vector.values))


def test_column_mask_zeroes_excluded_columns():
    values = np.ones((3, COLUMN_COUNT))
    masked = FeatureAssembler.apply_mask(values, ["sr_*", "cr_D"])

    excluded = [FEATURE_COLUMNS.index(name) for name in ("sr_A", "sr_B", "sr_C", "sr_D", "sr_E", "cr_D")]
    assert np.all(masked[:, excluded] == 0.0)
    assert masked.sum() == 3 * (COLUMN_COUNT - 6)
    assert FeatureAssembler.apply_mask(values, []) is values


def value_of(assembler, kind, signals, baseline, start=0, stop=None):
    return assembler.feature_over_window(kind, start, signals.frame_count if stop is None else stop,
                                         signals, baseline)[0]


def test_narrow_and_wide_pitch(assembler, make_signals, make_baseline):
    flags = np.ones(4, dtype=bool)
    narrow = make_signals(4, pitch=np.array([140.0, 150.0, 160.0, 170.0]), voiced=flags, speech=flags)
    wide = make_signals(4, pitch=np.array([60.0, 120.0, 240.0, 300.0]), voiced=flags, speech=flags)
    baseline = make_baseline()

    assert value_of(assembler, FeatureKind.NP, narrow, baseline) == pytest.approx(1.0 - 15.0 / 60.0)
    assert value_of(assembler, FeatureKind.WP, narrow, baseline) == 0.0
    assert value_of(assembler, FeatureKind.NP, wide, baseline) == 0.0
    assert value_of(assembler, FeatureKind.WP, wide, baseline) == pytest.approx(150.0 / 60.0 - 1.0)


def test_volume_and_creak_use_speech_frames(assembler, make_signals, make_baseline):
    speech = np.array([True, True, True, True, False])
    signals = make_signals(5, speech=speech,
                           intensity=np.array([-15.0, -25.0, -10.0, -20.0, -5.0]),
                           creak=np.array([0.2, 0.4, 0.6, 0.8, 1.0]))

    assert value_of(assembler, FeatureKind.VO, signals, make_baseline()) == pytest.approx(0.5)
    assert value_of(assembler, FeatureKind.CR, signals, make_baseline()) == pytest.approx(0.5)


def test_speaking_rate_needs_a_speech_predecessor(assembler, make_signals, make_baseline):
    signals = make_signals(5, speech=np.array([False, True, True, True, True]),
                           intensity=np.array([-30.0, -20.0, -25.0, -25.0, -40.0]))

    value, coverage = assembler.feature_over_window(FeatureKind.SR, 0, 5, signals, make_baseline())
    assert value == pytest.approx(20.0 / 3.0)
    assert coverage == pytest.approx(3 / 5)


def test_cepstral_distance_features(assembler, make_signals, make_baseline):
    cepstrum = np.zeros((4, Config.CEPSTRUM_ORDER))
    cepstrum[1, :2] = [3.0, 4.0]
    cepstrum[2, 0] = 1.0
    cepstrum[3, 0] = 9.0
    voiced = np.array([True, True, True, False])
    signals = make_signals(4, cepstrum=cepstrum, voiced=voiced, speech=np.ones(4, dtype=bool))
    baseline = make_baseline()

    assert value_of(assembler, FeatureKind.RE, signals, baseline) == pytest.approx((1.0 + np.exp(-5.0) + np.exp(-1.0)) / 3)
    assert value_of(assembler, FeatureKind.EN, signals, baseline) == pytest.approx(4.0 / 3.0)
    assert value_of(assembler, FeatureKind.RE, signals, make_baseline(cepstral_distance=5.0)) == pytest.approx(
        (1.0 + np.exp(-1.0) + np.exp(-0.2)) / 3)


def test_lengthening_is_inverse_flux(assembler, make_signals, make_baseline):
    cepstrum = np.zeros((4, Config.CEPSTRUM_ORDER))
    cepstrum[1:3, :2] = [3.0, 4.0]
    flags = np.ones(4, dtype=bool)
    signals = make_signals(4, cepstrum=cepstrum, speech=flags, voiced=flags)

    value, coverage = assembler.feature_over_window(FeatureKind.LE, 0, 4, signals, make_baseline())
    assert value == pytest.approx((1 / 6 + 1.0 + 1 / 6) / 3)
    assert coverage == pytest.approx(3 / 4)
    assert value_of(assembler, FeatureKind.LE, signals, make_baseline(flux_median=5.0)) == pytest.approx(2 / 3)


def test_flat_and_mid_tilt(assembler, make_signals, make_baseline):
    signals = make_signals(4, tilt=np.array([-6.0, -4.0, -9.0, -5.5]), speech=np.ones(4, dtype=bool))
    baseline = make_baseline()

    assert value_of(assembler, FeatureKind.TF, signals, baseline) == pytest.approx(0.3125)
    assert value_of(assembler, FeatureKind.TM, signals, baseline) == pytest.approx(0.4375)


BOUNDED = {
    FeatureKind.TL: (0.0, 1.0), FeatureKind.TH: (0.0, 1.0), FeatureKind.NP: (0.0, 1.0),
    FeatureKind.CR: (0.0, 1.0), FeatureKind.VF: (0.0, 1.0), FeatureKind.RE: (0.0, 1.0),
    FeatureKind.LE: (0.0, 1.0), FeatureKind.SF: (0.0, 1.0), FeatureKind.TM: (0.0, 1.0),
    FeatureKind.PD: (0.0, 1.0), FeatureKind.WP: (0.0, np.inf), FeatureKind.EN: (0.0, np.inf),
    FeatureKind.TF: (0.0, np.inf), FeatureKind.SR: (0.0, np.inf), FeatureKind.TR: (0.0, np.inf),
}


@pytest.mark.parametrize("degenerate", [False, True])
def test_clamped_features_stay_in_range(assembler, make_signals, make_baseline, rng, degenerate):
    frames = 400
    speech = rng.random(frames) < 0.7
    voiced = speech & (rng.random(frames) < 0.6)
    tilt = rng.normal(-6.0, 5.0, frames)
    tilt[rng.random(frames) < 0.2] = np.nan
    signals = make_signals(frames, speech=speech, voiced=voiced,
                           pitch=np.where(voiced, rng.uniform(50.0, 500.0, frames), np.nan),
                           intensity=rng.uniform(-90.0, 0.0, frames),
                           cepstrum=rng.normal(0.0, 2.0, (frames, Config.CEPSTRUM_ORDER)),
                           tilt=tilt, creak=np.where(voiced, rng.random(frames), 0.0))
    if degenerate:
        baseline = make_baseline(pitch_percentiles=np.full(5, 150.0), intensity_sd=0.0,
                                 cepstral_distance=0.0, flux_median=0.0, tilt_iqr=0.0)
    else:
        baseline = make_baseline(mean_cepstrum=rng.normal(0.0, 1.0, Config.CEPSTRUM_ORDER))

    values, coverage = assembler.feature_rows(range(frames), signals, baseline)

    assert np.all(np.isfinite(values))
    assert np.all((coverage >= 0.0) & (coverage <= 1.0))
    for kind, (low, high) in BOUNDED.items():
        columns = [column_index(kind, span) for span in ContextSpan]
        assert np.all(values[:, columns] >= low), kind
        assert np.all(values[:, columns] <= high), kind


def test_gain_leaves_level_free_features_unchanged(assembler, analyzer, rng):
    samples = 0.8 * np.concatenate([
        generators.harmonic_complex(np.linspace(110.0, 190.0, SR), 1.0),
        generators.silence(0.3),
        generators.harmonic_complex(np.linspace(240.0, 170.0, SR), 1.0, amplitude=0.3),
        generators.white_noise(0.4, rng, rms=0.05),
    ])
    rows = []
    for gain in (1.0, 0.25):
        signals = analyzer.analyze(gain * samples, SR)
        rows.append(assembler.feature_rows(range(signals.frame_count), signals, analyzer.build_baseline(signals))[0])

    for kind in (FeatureKind.TL, FeatureKind.TH, FeatureKind.NP, FeatureKind.WP, FeatureKind.VF, FeatureKind.SF,
                 FeatureKind.PD, FeatureKind.VO):
        columns = [column_index(kind, span) for span in ContextSpan]
        assert rows[1][:, columns] == pytest.approx(rows[0][:, columns], abs=1e-9), kind
