from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List

import numpy as np

from config import Config
from records.base_record import BaseRecord


class FeatureKind(Enum):
    """
    Mid-level feature codes, in output column order
    """
    TL = "tl"
    TH = "th"
    VO = "vo"
    NP = "np"
    WP = "wp"
    CR = "cr"
    VF = "vf"
    RE = "re"
    EN = "en"
    LE = "le"
    SR = "sr"
    SF = "sf"
    PD = "pd"
    ST = "st"
    TR = "tr"
    TF = "tf"
    TM = "tm"


class ContextSpan(Enum):
    """
    Context windows around the predicted frame, offsets in milliseconds
    relative to the frame's start
    """
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"

    @property
    def offsets_ms(self):
        return Config.SPANS_MS[self.value]

    @property
    def start_offset(self) -> int:
        return self.offsets_ms[0] // Config.HOP_MS

    @property
    def stop_offset(self) -> int:
        return self.offsets_ms[1] // Config.HOP_MS

    @property
    def width(self) -> int:
        return self.stop_offset - self.start_offset

    def frame_range(self, frame: int):
        """
        Half-open frame range of the span around a frame
        Offsets are floored at frame resolution

        :param frame:   predicted frame index
        :return:        (start, stop) frame indices, unclipped
        """
        return frame + self.start_offset, frame + self.stop_offset


FEATURE_COLUMNS: List[str] = [f"{kind.value}_{span.value}" for kind in FeatureKind for span in ContextSpan]
COLUMN_COUNT = len(FEATURE_COLUMNS)


def column_index(kind: FeatureKind, span: ContextSpan) -> int:
    return list(FeatureKind).index(kind) * len(ContextSpan) + list(ContextSpan).index(span)


def column_checksum(columns: List[str] = None) -> str:
    """
    SHA-1 of the ordered column names
    Stored in model files so that schema drift is detected on load

    :param columns: column names, the full grid by default
    :return:        hex digest
    """
    if columns is None:
        columns = FEATURE_COLUMNS
    return hashlib.sha1(",".join(columns).encode("utf-8")).hexdigest()


@dataclass(frozen=True, eq=False)
class FeatureVector(BaseRecord):
    """
    Context features of one frame

    Attributes:
        values      85 finite values, kind-major, span-minor
        coverage    85 fractions of each window's frames that carried valid data
        frame       frame index
        channel     left or right
        unreliable  True when the speaker baseline was unreliable
    """
    values: np.ndarray
    coverage: np.ndarray
    frame: int
    channel: str
    unreliable: bool = False

    def value(self, kind: FeatureKind, span: ContextSpan) -> float:
        return float(self.values[column_index(kind, span)])

    def get_dict(self) -> dict:
        return {
            "frame": self.frame,
            "channel": self.channel,
            "coverage_min": float(self.coverage.min()),
            "unreliable": self.unreliable,
        }


@dataclass(frozen=True, eq=False)
class FeatureMatrix(BaseRecord):
    """
    Feature vectors of consecutive frames of one channel

    Attributes:
        conversation_id conversation name
        channel         left or right
        frames          frame indices, one per row
        values          rows x 85
        coverage        rows x 85
        unreliable      True when the speaker baseline was unreliable
    """
    conversation_id: str
    channel: str
    frames: np.ndarray
    values: np.ndarray
    coverage: np.ndarray
    unreliable: bool = False

    def __len__(self):
        return len(self.frames)

    def vector(self, row: int) -> FeatureVector:
        return FeatureVector(
            values=self.values[row],
            coverage=self.coverage[row],
            frame=int(self.frames[row]),
            channel=self.channel,
            unreliable=self.unreliable,
        )

    def rows(self) -> Iterator[FeatureVector]:
        for row in range(len(self)):
            yield self.vector(row)

    def coverage_min(self) -> np.ndarray:
        return self.coverage.min(axis=1) if len(self) else np.zeros(0)

    def get_dict(self) -> dict:
        return {
            "conversation": self.conversation_id,
            "channel": self.channel,
            "rows": len(self),
            "first_frame": int(self.frames[0]) if len(self) else None,
            "unreliable": self.unreliable,
        }
