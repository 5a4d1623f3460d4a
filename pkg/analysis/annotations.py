from typing import Dict, List, Tuple

import numpy as np

from analysis.stats import Statistics
from errors import UndefinedResultException
from logger import Logger
from records.recording import FrameClock
from records.region import ConfusionMatrix, FrameLabels, LabelCounts, ReductionRegion


class Annotations:
    """
    Frame expansion and tallies of reduction regions, and inter-annotator agreement

    Constants:
        ANNOTATIONS_NAME    name used for logging
        LOGGER              logger instance
        LEVELS              number of reduction levels
    """
    ANNOTATIONS_NAME = "annotations"
    LOGGER = Logger(ANNOTATIONS_NAME)
    LEVELS = 4

    @classmethod
    def region_frames(cls, region, frame_count: int) -> Tuple[int, int]:
        """
        Frames whose start time lies inside a region, clipped to the channel

        :return: half-open (first, stop) frame range, possibly empty
        """
        first = FrameClock.first_frame_at_or_after(region.start_ms)
        stop = FrameClock.first_frame_at_or_after(region.end_ms)
        return min(first, frame_count), min(stop, frame_count)

    @classmethod
    def regions_to_frames(cls, regions: List[ReductionRegion], frame_count: int,
                          channel: str = None) -> FrameLabels:
        """
        Labels each frame with the level of the region containing its start time

        :param regions:     reduction regions
        :param frame_count: frames of the channel
        :param channel:     only regions of this channel are used when given
        :return:            FrameLabels instance
        """
        labels = FrameLabels.empty(frame_count)
        for region in regions:
            if channel is not None and region.channel != channel:
                continue
            first, stop = cls.region_frames(region, frame_count)
            if FrameClock.first_frame_at_or_after(region.end_ms) > frame_count:
                cls.LOGGER.warning(f"Region [{region.start_ms}, {region.end_ms}) ms on {region.channel} "
                                   f"extends past {frame_count} frames, clipping")
            labels.levels[first:stop] = region.level
        return labels

    @classmethod
    def region_levels(cls, regions: List[ReductionRegion], labels: FrameLabels) -> List[float]:
        """
        Mean frame level of each region, NaN for regions without labeled frames
        """
        means = []
        for region in regions:
            first, stop = cls.region_frames(region, labels.frame_count)
            levels = labels.levels[first:stop]
            levels = levels[levels != FrameLabels.UNLABELED]
            means.append(float(levels.mean()) if len(levels) else float("nan"))
        return means

    @staticmethod
    def _pair(regions_a: List[ReductionRegion], regions_b: List[ReductionRegion]):
        by_key: Dict[tuple, ReductionRegion] = {region.key: region for region in regions_b}
        pairs, unpaired_a = [], []
        for region in regions_a:
            partner = by_key.pop(region.key, None)
            if partner is None:
                unpaired_a.append(region)
            else:
                pairs.append((region.level, partner.level))
        unpaired_b = [region for region in regions_b if region.key in by_key]
        return pairs, unpaired_a, unpaired_b

    @classmethod
    def confusion_matrix(cls, regions_a: List[ReductionRegion],
                         regions_b: List[ReductionRegion]) -> ConfusionMatrix:
        """
        Counts label pairs over regions with identical (channel, start, end)

        :param regions_a:   first annotator's regions
        :param regions_b:   second annotator's regions on the same segmentation
        :return:            ConfusionMatrix instance
        """
        pairs, unpaired_a, unpaired_b = cls._pair(regions_a, regions_b)
        counts = np.zeros((cls.LEVELS, cls.LEVELS), dtype=np.int64)
        for level_a, level_b in pairs:
            counts[level_a, level_b] += 1

        if unpaired_a or unpaired_b:
            cls.LOGGER.warning(f"{len(unpaired_a)} + {len(unpaired_b)} regions without a counterpart")
        return ConfusionMatrix(counts, unpaired_a, unpaired_b)

    @classmethod
    def agreement_correlation(cls, regions_a: List[ReductionRegion],
                              regions_b: List[ReductionRegion]) -> Tuple[float, int]:
        """
        Pearson r over the labels of paired regions

        :raises UndefinedResultException: for fewer than 2 pairs or constant labels

        :return: (r, pairs)
        """
        pairs, _, _ = cls._pair(regions_a, regions_b)
        if not pairs:
            raise UndefinedResultException("no paired regions")
        levels_a, levels_b = zip(*pairs)
        return Statistics.pearson(levels_a, levels_b), len(pairs)

    @classmethod
    def frame_agreement(cls, regions_a: List[ReductionRegion], regions_b: List[ReductionRegion],
                        frame_count: int) -> Tuple[float, int]:
        """
        Pearson r over frames labeled by both annotators, per channel and pooled

        :raises UndefinedResultException: for fewer than 2 shared frames or constant labels

        :return: (r, frames)
        """
        levels_a, levels_b = [], []
        channels = sorted({region.channel for region in regions_a} | {region.channel for region in regions_b})
        for channel in channels:
            a = cls.regions_to_frames(regions_a, frame_count, channel)
            b = cls.regions_to_frames(regions_b, frame_count, channel)
            shared = a.labeled & b.labeled
            levels_a.append(a.levels[shared])
            levels_b.append(b.levels[shared])

        levels_a = np.concatenate(levels_a) if levels_a else np.zeros(0)
        levels_b = np.concatenate(levels_b) if levels_b else np.zeros(0)
        return Statistics.pearson(levels_a, levels_b), len(levels_a)

    @classmethod
    def label_counts(cls, regions: List[ReductionRegion]) -> LabelCounts:
        """
        Regions per level and frames per level, frames counted by start time
        """
        region_counts = np.zeros(cls.LEVELS, dtype=np.int64)
        frame_counts = np.zeros(cls.LEVELS, dtype=np.int64)
        for region in regions:
            first = FrameClock.first_frame_at_or_after(region.start_ms)
            stop = FrameClock.first_frame_at_or_after(region.end_ms)
            region_counts[region.level] += 1
            frame_counts[region.level] += max(stop - first, 0)
        return LabelCounts(region_counts, frame_counts)
