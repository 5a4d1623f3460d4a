from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from analysis.annotations import Annotations
from analysis.stats import Statistics
from config import Config
from errors import InsufficientDataException
from logger import Logger
from records.region import FrameLabels, FunctionRegion
from records.reports import FunctionStat, FunctionStats, ReductionDistribution
from validator import Validator

# function regions of one conversation with its frame labels per channel
LabeledRegions = Tuple[List[FunctionRegion], Dict[str, FrameLabels]]


class FunctionAnalysis:
    """
    Reduction statistics per pragmatic function

    Each region contributes the mean level of its labeled frames; the tag's
    region means are tested against the global mean with a one-sided t-test

    Constants:
        ANALYSIS_NAME   name used for logging
        LOGGER          logger instance
        LEVELS          number of reduction levels
    """
    ANALYSIS_NAME = "functions"
    LOGGER = Logger(ANALYSIS_NAME)
    LEVELS = 4

    @classmethod
    def reduction_distribution(cls, levels: np.ndarray) -> ReductionDistribution:
        """
        :raises InsufficientDataException: without labeled frames

        :param levels:  levels of labeled frames, or FrameLabels
        :return:        percentages, mean and population sd of the levels
        """
        if isinstance(levels, FrameLabels):
            levels = levels.labeled_levels()
        levels = np.asarray(levels, dtype=np.float64)
        if len(levels) == 0:
            raise InsufficientDataException("no labeled frames")

        return ReductionDistribution(
            percentages=cls.percentages(levels),
            mean=float(levels.mean()),
            sd=float(levels.std()),
            n=len(levels),
        )

    @classmethod
    def percentages(cls, levels: np.ndarray) -> np.ndarray:
        if len(levels) == 0:
            return np.zeros(cls.LEVELS)
        counts = np.bincount(np.asarray(levels, dtype=np.int64), minlength=cls.LEVELS)[:cls.LEVELS]
        return 100.0 * counts / len(levels)

    @staticmethod
    def region_frames(region: FunctionRegion, labels: Dict[str, FrameLabels]) -> np.ndarray:
        channel_labels = labels.get(region.channel)
        if channel_labels is None:
            return np.zeros(0)
        first, stop = Annotations.region_frames(region, channel_labels.frame_count)
        levels = channel_labels.levels[first:stop]
        return levels[levels != FrameLabels.UNLABELED].astype(np.float64)

    @classmethod
    def function_stats(cls, conversations: Iterable[LabeledRegions], global_mean: Optional[float] = None,
                       alpha: float = Config.ALPHA,
                       family_size: int = Config.BONFERRONI_FAMILY_SIZE) -> FunctionStats:
        """
        Per-tag reduction statistics against the global mean

        :raises InsufficientDataException: without any labeled frame

        :param conversations:   function regions with frame labels, one item per conversation
        :param global_mean:     reference mean, the mean over all labeled frames when None
        :param alpha:           raw significance level
        :param family_size:     Bonferroni family size
        :return:                FunctionStats with rows ordered by p, unavailable tags last
        """
        conversations = list(conversations)
        all_levels = np.concatenate([np.zeros(0)] + [
            channel_labels.labeled_levels() for _, labels in conversations for channel_labels in labels.values()
        ])
        distribution = cls.reduction_distribution(all_levels)
        if global_mean is None:
            global_mean = distribution.mean
        global_sd = distribution.sd

        samples = {tag: [] for tag in Validator.FUNCTION_TAGS}
        frames = {tag: [] for tag in Validator.FUNCTION_TAGS}
        for regions, labels in conversations:
            for region in regions:
                levels = cls.region_frames(region, labels)
                if len(levels):
                    samples[region.tag].append(float(levels.mean()))
                    frames[region.tag].append(levels)

        rows = [cls._tag_row(tag, samples[tag], frames[tag], global_mean, global_sd, alpha, family_size)
                for tag in Validator.FUNCTION_TAGS]
        order = {tag: index for index, tag in enumerate(Validator.FUNCTION_TAGS)}
        rows.sort(key=lambda row: (not row.available, row.p if row.available else 0.0, order[row.tag]))

        overall = FunctionStat(
            tag="all",
            mean=distribution.mean,
            n=distribution.n,
            t=None,
            p=None,
            survives=False,
            percentages=distribution.percentages,
            effect_size=0.0,
        )
        stats = FunctionStats(overall, rows, global_mean, alpha, family_size)
        cls.LOGGER.info(f"Function statistics: {stats.get_dict()}")
        return stats

    @classmethod
    def _tag_row(cls, tag: str, samples: List[float], frames: List[np.ndarray], global_mean: float,
                 global_sd: float, alpha: float, family_size: int) -> FunctionStat:
        levels = np.concatenate(frames) if frames else np.zeros(0)
        mean = float(np.mean(samples)) if samples else None
        t = p = None
        if len(samples) >= 2:
            t, p = Statistics.one_sided_t_test(samples, global_mean)
        else:
            cls.LOGGER.debug(f"{tag}: {len(samples)} regions, statistics unavailable")

        effect = None
        if mean is not None and global_sd > Config.MIN_SPREAD:
            effect = (mean - global_mean) / global_sd

        return FunctionStat(
            tag=tag,
            mean=mean,
            n=len(samples),
            t=t,
            p=p,
            survives=bool(p is not None and Statistics.bonferroni_gate([p], alpha, family_size)[0]),
            percentages=cls.percentages(levels),
            effect_size=effect,
        )

    @staticmethod
    def collapse_to_first_tag(regions: List[FunctionRegion]) -> List[FunctionRegion]:
        """
        Reduces multi-tier annotation to a single tier
        A region is dropped when it overlaps a region whose tag comes earlier
        in FI, PC, UC, RE, PW, DP, TC, TG, PF, PO, NEG

        :param regions: function regions, possibly overlapping
        :return:        kept regions in input order
        """
        rank = {tag: index for index, tag in enumerate(Validator.FUNCTION_TAGS)}
        return [
            region for region in regions
            if not any(other.overlaps(region) and rank[other.tag] < rank[region.tag] for other in regions)
        ]

    @staticmethod
    def compare_passes(first: FunctionStats, second: FunctionStats) -> pd.DataFrame:
        """
        Side-by-side per-tag statistics of two annotation passes

        :return: one row per tag in tag list order
        """
        rows = []
        for tag in Validator.FUNCTION_TAGS:
            a, b = first.row(tag), second.row(tag)
            rows.append({
                "tag": tag,
                "first_mean": a.mean,
                "first_n": a.n,
                "first_p": a.p,
                "second_mean": b.mean,
                "second_n": b.n,
                "second_p": b.p,
                "mean_change": b.mean - a.mean if a.mean is not None and b.mean is not None else None,
            })
        return pd.DataFrame(rows)
