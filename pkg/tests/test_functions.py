import numpy as np
import pytest

from analysis.functions import FunctionAnalysis
from analysis.stats import Statistics
from errors import InsufficientDataException
from records.region import FrameLabels, FunctionRegion
from validator import Validator


@pytest.fixture
def labels():
    levels = np.full(200, FrameLabels.UNLABELED, dtype=np.int8)
    levels[0:20] = 3
    levels[20:30] = 2
    levels[30:100] = 1
    return {"left": FrameLabels(levels)}


@pytest.fixture
def regions():
    return [
        FunctionRegion("left", 0.0, 100.0, "PC"),
        FunctionRegion("left", 100.0, 200.0, "PC"),
        FunctionRegion("left", 200.0, 300.0, "PC"),
        FunctionRegion("left", 300.0, 400.0, "TG"),
        FunctionRegion("left", 400.0, 500.0, "TG"),
        FunctionRegion("left", 500.0, 700.0, "FI"),
        FunctionRegion("left", 1200.0, 1500.0, "UC"),
        FunctionRegion("right", 0.0, 300.0, "RE"),
    ]


def test_reduction_distribution():
    levels = np.repeat([0, 1, 2, 3], [35, 38, 21, 6])
    distribution = FunctionAnalysis.reduction_distribution(levels)

    assert distribution.percentages.tolist() == pytest.approx([35.0, 38.0, 21.0, 6.0])
    assert distribution.mean == pytest.approx(0.98)
    assert distribution.sd == pytest.approx(0.8942, abs=1e-4)
    assert distribution.n == 100


def test_reduction_distribution_of_frame_labels(labels):
    distribution = FunctionAnalysis.reduction_distribution(labels["left"])

    assert distribution.n == 100
    assert distribution.mean == pytest.approx(1.5)
    assert distribution.sd == pytest.approx(np.sqrt(0.65))


def test_reduction_distribution_needs_labels():
    with pytest.raises(InsufficientDataException):
        FunctionAnalysis.reduction_distribution(FrameLabels.empty(10))


def test_function_stats_rows(labels, regions):
    stats = FunctionAnalysis.function_stats([(regions, labels)])

    assert stats.global_mean == pytest.approx(1.5)
    assert stats.overall.tag == "all"
    assert stats.overall.n == 100
    assert len(stats.rows) == len(Validator.FUNCTION_TAGS)
    assert [row.tag for row in stats.rows[:3]] == ["PC", "TG", "FI"]
    assert all(not row.available for row in stats.rows[2:])

    pc = stats.row("PC")
    t, p = Statistics.one_sided_t_test([3.0, 3.0, 2.0], 1.5)
    assert (pc.mean, pc.n) == (pytest.approx(8 / 3), 3)
    assert (pc.t, pc.p) == (pytest.approx(t), pytest.approx(p))
    assert pc.percentages.tolist() == pytest.approx([0.0, 0.0, 100 / 3, 200 / 3])
    assert pc.effect_size == pytest.approx((8 / 3 - 1.5) / np.sqrt(0.65))
    assert not pc.survives

    tg = stats.row("TG")
    assert (tg.mean, tg.p) == (1.0, 1.0)


def test_tags_without_enough_regions_are_unavailable(labels, regions):
    stats = FunctionAnalysis.function_stats([(regions, labels)])

    fi = stats.row("FI")
    assert fi.n == 1 and fi.mean == 1.0
    assert fi.t is None and fi.p is None and not fi.survives

    for tag in ("UC", "RE"):
        row = stats.row(tag)
        assert row.n == 0 and row.mean is None and row.effect_size is None


def test_bonferroni_family_size_gates_survival(labels, regions):
    strict = FunctionAnalysis.function_stats([(regions, labels)], alpha=0.05, family_size=9)
    loose = FunctionAnalysis.function_stats([(regions, labels)], alpha=0.05, family_size=1)

    assert not strict.row("PC").survives
    assert loose.row("PC").survives
    assert loose.get_dict()["survivors"] == 1


def test_explicit_global_mean(labels, regions):
    stats = FunctionAnalysis.function_stats([(regions, labels)], global_mean=2.0)

    assert stats.global_mean == 2.0
    assert stats.overall.mean == pytest.approx(1.5)
    assert stats.row("PC").t == pytest.approx(Statistics.one_sided_t_test([3.0, 3.0, 2.0], 2.0)[0])


def test_function_stats_pool_conversations(labels, regions):
    stats = FunctionAnalysis.function_stats([(regions, labels), (regions[:3], labels)])
    assert stats.row("PC").n == 6
    assert stats.overall.n == 200


def test_function_stats_need_labeled_frames(regions):
    with pytest.raises(InsufficientDataException):
        FunctionAnalysis.function_stats([(regions, {"left": FrameLabels.empty(50)})])


def test_collapse_keeps_the_earliest_tag():
    regions = [
        FunctionRegion("left", 0.0, 1000.0, "PC"),
        FunctionRegion("left", 500.0, 1500.0, "TG"),
        FunctionRegion("right", 0.0, 1000.0, "TG"),
        FunctionRegion("left", 2000.0, 2500.0, "FI"),
        FunctionRegion("left", 2400.0, 3000.0, "NEG"),
        FunctionRegion("left", 3000.0, 3100.0, "PO"),
    ]

    kept = FunctionAnalysis.collapse_to_first_tag(regions)

    assert kept == [regions[0], regions[2], regions[3], regions[5]]


def test_compare_passes(labels, regions):
    first = FunctionAnalysis.function_stats([(regions, labels)])
    second = FunctionAnalysis.function_stats([(regions[:2] + regions[3:], labels)])

    table = FunctionAnalysis.compare_passes(first, second)

    assert table["tag"].tolist() == list(Validator.FUNCTION_TAGS)
    pc = table.set_index("tag").loc["PC"]
    assert pc["first_n"] == 3 and pc["second_n"] == 2
    assert pc["mean_change"] == pytest.approx(3.0 - 8 / 3)
