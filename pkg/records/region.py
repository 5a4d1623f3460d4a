from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from records.base_record import BaseRecord


@dataclass(frozen=True)
class ReductionRegion(BaseRecord):
    """
    Time span labeled with a perceived reduction level

    Attributes:
        channel     left or right
        start_ms    inclusive start
        end_ms      exclusive end
        level       0 enunciated, 1 normal, 2 reduced, 3 strongly reduced
        line        source line in the region file, 0 when built in memory
    """
    channel: str
    start_ms: float
    end_ms: float
    level: int
    line: int = field(default=0, compare=False)

    @property
    def key(self) -> Tuple[str, float, float]:
        return self.channel, self.start_ms, self.end_ms

    @property
    def duration_ms(self) -> float:
        return self.end_ms - self.start_ms

    def get_dict(self) -> dict:
        return {"channel": self.channel, "start_ms": self.start_ms, "end_ms": self.end_ms, "label": self.level}


@dataclass(frozen=True)
class FunctionRegion(BaseRecord):
    """
    Time span tagged with a pragmatic function
    Regions with different tags may overlap

    Attributes:
        channel     left or right
        start_ms    inclusive start
        end_ms      exclusive end
        tag         one of FI PC UC RE PW DP TC TG PF PO NEG
        line        source line in the region file
    """
    channel: str
    start_ms: float
    end_ms: float
    tag: str
    line: int = field(default=0, compare=False)

    def overlaps(self, other) -> bool:
        return self.channel == other.channel and self.start_ms < other.end_ms and other.start_ms < self.end_ms

    def get_dict(self) -> dict:
        return {"channel": self.channel, "start_ms": self.start_ms, "end_ms": self.end_ms, "tag": self.tag}


@dataclass(frozen=True, eq=False)
class FrameLabels(BaseRecord):
    """
    Per-frame reduction levels of one channel

    Attributes:
        levels  int8 array, -1 where the frame is unlabeled
    """
    levels: np.ndarray

    UNLABELED = -1

    @classmethod
    def empty(cls, frame_count: int) -> FrameLabels:
        return cls(np.full(frame_count, cls.UNLABELED, dtype=np.int8))

    @property
    def labeled(self) -> np.ndarray:
        return self.levels != self.UNLABELED

    @property
    def frame_count(self) -> int:
        return len(self.levels)

    def labeled_levels(self) -> np.ndarray:
        return self.levels[self.labeled].astype(float)

    def get_dict(self) -> dict:
        return {"frames": self.frame_count, "labeled": int(self.labeled.sum())}


@dataclass(frozen=True, eq=False)
class LabelCounts(BaseRecord):
    """
    Label tallies

    Attributes:
        regions     region count per level 0..3
        frames      frame count per level 0..3
    """
    regions: np.ndarray
    frames: np.ndarray

    def get_dict(self) -> dict:
        return {"regions": self.regions.tolist(), "frames": self.frames.tolist()}


@dataclass(frozen=True, eq=False)
class ConfusionMatrix(BaseRecord):
    """
    Inter-annotator confusion counts over paired regions

    Attributes:
        counts      4 x 4, counts[a][b] = regions labeled a by the first annotator and b by the second
        unpaired_a  first annotator's regions without a counterpart
        unpaired_b  second annotator's regions without a counterpart
    """
    counts: np.ndarray
    unpaired_a: List[ReductionRegion]
    unpaired_b: List[ReductionRegion]

    @property
    def paired(self) -> int:
        return int(self.counts.sum())

    def off_diagonal(self) -> int:
        return int(self.counts.sum() - np.trace(self.counts))

    def get_dict(self) -> dict:
        return {
            "counts": self.counts.tolist(),
            "paired": self.paired,
            "unpaired_a": len(self.unpaired_a),
            "unpaired_b": len(self.unpaired_b),
        }
