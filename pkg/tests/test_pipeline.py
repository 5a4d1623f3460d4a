import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from console import Console
from errors import ConfigException
from extractors.signal_analyzer import SignalAnalyzer
from handlers.wav_handler import WavHandler
from records.recording import FrameClock
from synthesis.corpus import SyntheticCorpus
from validator import Validator

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    """
    Three 40 s conversations; the last one is held out by the generated config
    """
    out = tmp_path_factory.mktemp("corpus")
    config_path = SyntheticCorpus(seed=11, conversations=3, seconds=40).build(out)
    return config_path


@pytest.fixture(scope="module")
def extracted(corpus):
    return Console("extract", corpus).run()


def read_report(path):
    return pd.read_csv(path, dtype=str, keep_default_na=False)


def test_synth_is_deterministic(tmp_path):
    first = SyntheticCorpus(seed=3, conversations=2, seconds=10).build(tmp_path / "first").parent
    second = SyntheticCorpus(seed=3, conversations=2, seconds=10).build(tmp_path / "second").parent

    files = sorted(path.relative_to(first) for path in first.rglob("*") if path.is_file())
    assert Path("audio/SYN_001.wav") in files and Path("truth.txt") in files
    for name in files:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_truth_sidecar(corpus):
    truth = SyntheticCorpus.read_truth(corpus.parent / "truth.txt")

    assert float(truth["expected_r"]) == pytest.approx(1.2 / np.hypot(1.2, 0.6), abs=1e-5)
    assert 0.7 < float(truth["oracle_r"]) <= 1.0
    assert truth["expected_r_band"] == pytest.approx((0.25, float(truth["oracle_r"]) + 0.05), abs=1e-5)
    assert [segment[4] for segment in truth["tilt_segments"]] == [-6.0, -3.0, 0.0]


def test_planted_tilt_segments_are_recovered(corpus):
    truth = SyntheticCorpus.read_truth(corpus.parent / "truth.txt")
    analyzer = SignalAnalyzer()

    for conversation_id, channel, start_ms, end_ms, slope in truth["tilt_segments"]:
        recording = WavHandler().read(corpus.parent / "audio" / f"{conversation_id}.wav")
        tilt = analyzer.analyze(recording.channel(channel), recording.sample_rate).tilt
        first, stop = FrameClock.first_frame_at_or_after(start_ms), FrameClock.first_frame_at_or_after(end_ms)

        assert np.median(tilt[first + 20:stop - 20]) == pytest.approx(slope, abs=0.1), conversation_id


def test_extract_writes_one_matrix_per_channel(corpus, extracted):
    results = corpus.parent / "results"
    expected = [results / "features" / f"SYN_00{index}_{channel}.csv"
                for index in (1, 2, 3) for channel in Validator.CHANNELS]

    assert extracted == expected
    table = pd.read_csv(expected[0])
    assert len(table) == 4000
    assert table.columns[3] == "tl_A" and table.columns[-1] == "coverage_min"


def test_extract_rerun_is_byte_identical(corpus, extracted):
    before = [path.read_bytes() for path in extracted]
    again = Console("extract", corpus).run()

    assert [path.read_bytes() for path in again] == before


def test_train_and_evaluate_on_the_held_out_conversation(corpus, extracted):
    truth = SyntheticCorpus.read_truth(corpus.parent / "truth.txt")

    model_path, = Console("train", corpus).run()
    evaluation_path, = Console("evaluate", corpus).run()

    assert model_path.name == "model_linear.txt"
    assert "conversations=SYN_001;SYN_002" in model_path.read_text(encoding="utf-8")
    report = read_report(evaluation_path).iloc[0]
    assert report["holdout"] == "SYN_003" and report["model"] == "linear"
    r = float(report["r"])
    low, high = truth["expected_r_band"]
    assert low < r <= high


def test_correlate_reports(corpus, extracted):
    written = Console("correlate", corpus).run()

    assert [path.name for path in written] == ["correlations.csv", "correlations_strong.csv",
                                                "correlations_best_span.csv", "label_counts.csv"]
    table = read_report(written[0])
    assert len(table) == 85
    defined = table.loc[table["r"] != "undefined", "r"].astype(float)
    assert defined.abs().max() > 0.2
    assert set(read_report(written[1])["r"].map(lambda value: abs(float(value)) > 0.06)) == {True}


def test_agreement_reports(corpus):
    confusion_path, agreement_path = Console("agreement", corpus).run()

    confusion = read_report(confusion_path)
    agreement = read_report(agreement_path).set_index("level")
    assert confusion["a"].tolist() == ["0", "1", "2", "3"]
    assert 0.5 < float(agreement.loc["region", "r"]) < 1.0
    assert int(agreement.loc["frame", "n"]) > int(agreement.loc["region", "n"])


def test_agreement_of_a_file_with_itself(corpus):
    config = corpus.parent / "self.cfg"
    config.write_text(corpus.read_text(encoding="utf-8").replace("reduction_b.csv", "reduction.csv"),
                      encoding="utf-8")

    confusion_path, agreement_path = Console("agreement", config, out=corpus.parent / "self").run()

    counts = read_report(confusion_path)[["b0", "b1", "b2", "b3"]].astype(int).to_numpy()
    assert counts.sum() == np.trace(counts)
    assert read_report(agreement_path)["r"].tolist() == ["1", "1"]


def test_function_statistics(corpus):
    written = Console("functions", corpus).run()

    assert [path.name for path in written] == ["function_stats.csv", "function_stats_second.csv",
                                                "function_passes.csv"]
    stats = read_report(written[0])
    assert stats["tag"].iloc[0] == "all"
    assert sorted(stats["tag"].iloc[1:]) == sorted(Validator.FUNCTION_TAGS)
    assert "bonferroni" in stats.columns
    assert set(stats["bonferroni"]) <= {"", "+"}


def test_evaluate_without_holdout_is_a_config_error(corpus, extracted):
    config = corpus.parent / "no_holdout.cfg"
    config.write_text("\n".join(line for line in corpus.read_text(encoding="utf-8").splitlines()
                                if not line.startswith("holdout")) + "\n", encoding="utf-8")

    with pytest.raises(ConfigException):
        Console("evaluate", config).run()


def test_unknown_command():
    with pytest.raises(ConfigException):
        Console("plot", "whatever.cfg")


def test_command_line_reports_errors(tmp_path):
    result = subprocess.run([sys.executable, "main.py", "extract", "--config", str(tmp_path / "absent.cfg")],
                            cwd=REPO_ROOT, capture_output=True, text=True)

    assert result.returncode == 1
    assert result.stderr.strip().endswith("absent.cfg not found")
    assert "reduxcorr extract:" in result.stderr


def run_pipeline(config_path):
    for command in ("extract", "train"):
        Console(command, config_path).run()
    return Console("evaluate", config_path).run()[0]


@pytest.mark.slow
def test_ten_minute_corpus_end_to_end(tmp_path):
    corpus = SyntheticCorpus(seed=7)
    assert corpus.conversations * corpus.seconds >= 600

    started = time.perf_counter()
    first = corpus.build(tmp_path / "first")
    evaluation = run_pipeline(first)
    assert time.perf_counter() - started < 120.0

    truth = SyntheticCorpus.read_truth(first.parent / "truth.txt")
    low, high = truth["expected_r_band"]
    assert low < float(read_report(evaluation)["r"].iloc[0]) <= high

    second = corpus.build(tmp_path / "second")
    again = run_pipeline(second)
    assert again.read_bytes() == evaluation.read_bytes()
    assert ((second.parent / "results" / "model_linear.txt").read_bytes()
            == (first.parent / "results" / "model_linear.txt").read_bytes())
