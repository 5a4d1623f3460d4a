from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from config import Config
from errors import NegativeTimeException
from records.base_record import BaseRecord


class FrameClock:
    """
    Frame clock shared by every per-frame series

    Frame i covers the half-open interval [i * hop, (i + 1) * hop) milliseconds
    and its analysis window is centered on the middle of that interval

    Constants:
        HOP_MS      frame hop in milliseconds
        WINDOW_MS   analysis window in milliseconds
    """
    HOP_MS = Config.HOP_MS
    WINDOW_MS = Config.WINDOW_MS

    def __init__(self, sample_rate: int, sample_count: int):
        self.sample_rate = sample_rate
        self.sample_count = sample_count
        self.frame_count = sample_count * (1000 // self.HOP_MS) // sample_rate

    @staticmethod
    def time_to_frame(time_ms: float) -> int:
        """
        Maps an instant to the frame containing it

        :raises NegativeTimeException: if time_ms is negative

        :param time_ms: time in milliseconds
        :return:        frame index
        """
        if time_ms < 0:
            raise NegativeTimeException(time_ms)
        return int(math.floor(time_ms / FrameClock.HOP_MS))

    @staticmethod
    def frame_to_time(frame: int) -> int:
        """
        Returns the start time of a frame in milliseconds
        """
        return frame * FrameClock.HOP_MS

    @staticmethod
    def first_frame_at_or_after(time_ms: float) -> int:
        """
        Returns the first frame whose start time is not earlier than time_ms
        """
        return int(math.ceil(time_ms / FrameClock.HOP_MS))

    def frame_centers(self) -> np.ndarray:
        """
        Sample positions of frame centers

        :return: float array of length frame_count
        """
        hop = self.sample_rate * self.HOP_MS / 1000.0
        return (np.arange(self.frame_count) + 0.5) * hop

    def window_samples(self, window_ms: float = None) -> int:
        if window_ms is None:
            window_ms = self.WINDOW_MS
        return int(round(self.sample_rate * window_ms / 1000.0))

    @property
    def length_ms(self) -> float:
        return self.sample_count * 1000.0 / self.sample_rate


@dataclass(frozen=True, eq=False)
class AudioRecording(BaseRecord):
    """
    Two-channel conversation audio

    Attributes:
        conversation_id     conversation name
        sample_rate         rate in Hz
        left                left speaker samples normalized to [-1, 1]
        right               right speaker samples normalized to [-1, 1]
        duplicated_mono     True when a mono file was copied into both channels
    """
    conversation_id: str
    sample_rate: int
    left: np.ndarray
    right: np.ndarray
    duplicated_mono: bool = False

    def __post_init__(self):
        self.left.setflags(write=False)
        self.right.setflags(write=False)

    def channel(self, name: str) -> np.ndarray:
        """
        Returns the samples of a channel

        :param name:    left or right
        :return:        read-only sample array
        """
        if name == "left":
            return self.left
        if name == "right":
            return self.right
        raise ValueError(f"unknown channel {name}")

    @property
    def clock(self) -> FrameClock:
        return FrameClock(self.sample_rate, len(self.left))

    @property
    def frame_count(self) -> int:
        return self.clock.frame_count

    def get_dict(self) -> dict:
        return {
            "conversation": self.conversation_id,
            "sample_rate": self.sample_rate,
            "samples": len(self.left),
            "frames": self.frame_count,
            "mono": self.duplicated_mono,
        }
