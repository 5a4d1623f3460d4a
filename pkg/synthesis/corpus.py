from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from analysis.stats import Statistics
from config import RunConfig
from handlers.manifest_handler import ManifestHandler
from handlers.region_handler import RegionHandler
from handlers.wav_handler import WavHandler
from logger import Logger
from records.manifest import Manifest, ManifestEntry
from records.recording import AudioRecording
from records.region import FunctionRegion, ReductionRegion
from synthesis import generators
from validator import Validator


@dataclass
class ChannelScript:
    """
    What was planted on one channel

    Attributes:
        samples         generated audio
        reduction       labeled utterance regions
        latents         latent reduction value of each labeled region
        functions       first-pass function regions
        tilt_segments   (start_ms, end_ms, slope) of tilt probes
    """
    samples: np.ndarray
    reduction: List[ReductionRegion] = field(default_factory=list)
    latents: List[float] = field(default_factory=list)
    functions: List[FunctionRegion] = field(default_factory=list)
    tilt_segments: List[Tuple[int, int, float]] = field(default_factory=list)


class SyntheticCorpus:
    """
    Deterministic stand-in corpus with planted label/feature dependencies

    Each labeled utterance is a harmonic complex driven by a latent value z:
    higher z lowers pitch and level and steepens the spectral rolloff; its
    label is clip(round(1.5 + 1.2 z + noise)) with noise sd 0.6, a 2:1
    signal to noise ratio. Pauses, noise bursts, jittered pulse trains and
    tilt probes with known slopes fill the rest of the timeline

    Frame-level context features recover only part of z, so a held-out
    correlation is expected between HELD_OUT_R_FLOOR and the labels' own
    correlation with z plus HELD_OUT_R_SLACK

    Constants:
        CORPUS_NAME     name used for logging
        LOGGER          logger instance
    """
    CORPUS_NAME = "synth"
    LOGGER = Logger(CORPUS_NAME)

    SAMPLE_RATE = generators.SAMPLE_RATE
    LABEL_INTERCEPT = 1.5
    LABEL_WEIGHT = 1.2
    NOISE_SD = 0.6
    PITCH_BASE_HZ = {"left": 120.0, "right": 210.0}
    PITCH_OCTAVES_PER_Z = -0.15
    GAIN_DB = -10.0
    GAIN_DB_PER_Z = -4.0
    ROLLOFF_DB = -6.0
    ROLLOFF_DB_PER_Z = -1.5
    TILT_SLOPES = (-6.0, -3.0, 0.0, 3.0)
    TILT_PROBE_FRAMES = 150
    REDUCED_TAGS = ("UC", "FI", "PW", "TC")
    HELD_OUT_R_FLOOR = 0.25
    HELD_OUT_R_SLACK = 0.05

    def __init__(self, seed: int = 0, conversations: int = 6, seconds: int = 100, language: str = "en"):
        self.seed = seed
        self.conversations = conversations
        self.seconds = seconds
        self.language = language
        self.wav_handler = WavHandler()
        self.region_handler = RegionHandler()
        self.manifest_handler = ManifestHandler()

    @property
    def conversation_ids(self) -> List[str]:
        return [f"SYN_{index + 1:03d}" for index in range(self.conversations)]

    def build(self, out) -> Path:
        """
        Writes audio, region files, manifest, run config and truth sidecar

        :param out: corpus directory
        :return:    location of the generated run config
        """
        out = Path(out)
        self.LOGGER.info(f"Synthesizing {self.conversations} conversations of {self.seconds} s into {out}")

        entries = []
        labels, latents, tilt_lines = [], [], []
        for index, conversation_id in enumerate(self.conversation_ids):
            scripts = {channel: self.channel_script(index, channel_index, channel)
                       for channel_index, channel in enumerate(Validator.CHANNELS)}
            entries.append(self.write_conversation(out, conversation_id, index, scripts))

            for channel, script in scripts.items():
                for region, latent in zip(script.reduction, script.latents):
                    frames = int(round(region.duration_ms / 10))
                    labels.extend([region.level] * frames)
                    latents.extend([latent] * frames)
                for start_ms, end_ms, slope in script.tilt_segments:
                    tilt_lines.append(f"tilt_segment={conversation_id},{channel},{start_ms},{end_ms},{slope:g}")

        manifest_path = out / "manifest.csv"
        self.manifest_handler.write(Manifest(manifest_path, entries), manifest_path)

        oracle_r = Statistics.pearson(latents, labels)
        self.write_truth(out / "truth.txt", oracle_r, tilt_lines)
        return self.write_config(out / "reduxcorr.cfg")

    def channel_script(self, conversation: int, channel_index: int, channel: str) -> ChannelScript:
        rng = np.random.default_rng([self.seed, conversation, channel_index])
        total_frames = self.seconds * 100
        pieces, script = [], ChannelScript(np.zeros(0))
        cursor = 0

        def append(samples: np.ndarray) -> Tuple[int, int]:
            nonlocal cursor
            start = cursor
            pieces.append(samples)
            cursor += len(samples) * 100 // self.SAMPLE_RATE
            return start * 10, cursor * 10

        if channel_index == 0:
            slope = self.TILT_SLOPES[conversation % len(self.TILT_SLOPES)]
            probe = generators.tilt_probe(slope, self.TILT_PROBE_FRAMES / 100.0, self.SAMPLE_RATE)
            start_ms, end_ms = append(probe)
            script.tilt_segments.append((start_ms, end_ms, slope))
            append(generators.silence(0.3, self.SAMPLE_RATE))

        while total_frames - cursor >= 30:
            remaining = total_frames - cursor
            kind = rng.choice(["utterance", "creak", "noise"], p=[0.9, 0.04, 0.06])
            frames = int(min(rng.integers(80, 251), remaining))
            seconds = frames / 100.0

            if kind == "utterance":
                z = float(np.clip(rng.normal(), -2.5, 2.5))
                self.utterance(script, append, rng, channel, z, seconds)
            elif kind == "creak":
                append(generators.fade(generators.pulse_train([8.0, 12.0], seconds, self.SAMPLE_RATE, 0.3)))
            else:
                append(generators.fade(generators.white_noise(seconds, rng, self.SAMPLE_RATE, rms=0.02)))

            pause = int(min(rng.integers(20, 61), total_frames - cursor))
            if pause > 0:
                append(generators.silence(pause / 100.0, self.SAMPLE_RATE))

        if cursor < total_frames:
            append(generators.silence((total_frames - cursor) / 100.0, self.SAMPLE_RATE))

        script.samples = np.concatenate(pieces)[:self.seconds * self.SAMPLE_RATE]
        return script

    def utterance(self, script: ChannelScript, append, rng: np.random.Generator, channel: str,
                  z: float, seconds: float) -> None:
        count = generators.sample_count(seconds, self.SAMPLE_RATE)
        f0 = self.PITCH_BASE_HZ[channel] * 2.0 ** (self.PITCH_OCTAVES_PER_Z * z) * np.linspace(1.05, 0.95, count)
        amplitude = 10.0 ** ((self.GAIN_DB + self.GAIN_DB_PER_Z * z) / 20.0)
        samples = generators.harmonic_complex(f0, seconds, self.SAMPLE_RATE, min(amplitude, 0.9),
                                              self.ROLLOFF_DB + self.ROLLOFF_DB_PER_Z * z, top_hz=3500.0)
        start_ms, end_ms = append(generators.fade(samples, self.SAMPLE_RATE))

        noisy = self.LABEL_INTERCEPT + self.LABEL_WEIGHT * z + rng.normal(0.0, self.NOISE_SD)
        level = int(np.clip(np.round(noisy), 0, 3))
        script.reduction.append(ReductionRegion(channel, float(start_ms), float(end_ms), level))
        script.latents.append(self.LABEL_INTERCEPT + self.LABEL_WEIGHT * z)

        if rng.random() < 0.6:
            pool = self.REDUCED_TAGS if level >= 2 and rng.random() < 0.7 else Validator.FUNCTION_TAGS
            tag = str(rng.choice(pool))
            script.functions.append(FunctionRegion(channel, float(start_ms), float(end_ms), tag))

    def write_conversation(self, out: Path, conversation_id: str, index: int,
                           scripts: Dict[str, ChannelScript]) -> ManifestEntry:
        rng = np.random.default_rng([self.seed, index, 99])
        recording = AudioRecording(conversation_id, self.SAMPLE_RATE,
                                   scripts["left"].samples, scripts["right"].samples)
        wav_path = self.wav_handler.write(recording, out / "audio" / f"{conversation_id}.wav")

        reduction = [region for script in scripts.values() for region in script.reduction]
        second_annotator = []
        for region in reduction:
            level = region.level
            if rng.random() < 0.3:
                level = int(np.clip(level + rng.choice([-1, 1]), 0, 3))
            second_annotator.append(ReductionRegion(region.channel, region.start_ms, region.end_ms, level))

        functions = [region for script in scripts.values() for region in script.functions]
        second_pass = list(functions)
        for region in functions:
            if rng.random() < 0.25:
                others = [tag for tag in Validator.FUNCTION_TAGS if tag != region.tag]
                second_pass.append(FunctionRegion(region.channel, region.start_ms, region.end_ms,
                                                  str(rng.choice(others))))

        labels = out / "labels"
        paths = {
            "reduction": labels / f"{conversation_id}_reduction.csv",
            "reduction_b": labels / f"{conversation_id}_reduction_b.csv",
            "functions": labels / f"{conversation_id}_functions.csv",
            "functions_second": labels / f"{conversation_id}_functions_second.csv",
        }
        self.region_handler.write(reduction, paths["reduction"])
        self.region_handler.write(second_annotator, paths["reduction_b"])
        self.region_handler.write(functions, paths["functions"])
        self.region_handler.write(second_pass, paths["functions_second"])

        return ManifestEntry(
            conversation_id=conversation_id,
            wav_path=wav_path,
            start_ms=0.0,
            end_ms=float(self.seconds * 1000),
            reduction_path=paths["reduction"],
            function_path=paths["functions"],
            second_function_path=paths["functions_second"],
        )

    def write_truth(self, path: Path, oracle_r: float, tilt_lines: List[str]) -> Path:
        lines = [
            f"seed={self.seed}",
            f"conversations={self.conversations}",
            f"seconds={self.seconds}",
            f"label_intercept={self.LABEL_INTERCEPT}",
            f"label_weight={self.LABEL_WEIGHT}",
            f"noise_sd={self.NOISE_SD}",
            f"pitch_octaves_per_z={self.PITCH_OCTAVES_PER_Z}",
            f"gain_db_per_z={self.GAIN_DB_PER_Z}",
            f"rolloff_db_per_z={self.ROLLOFF_DB_PER_Z}",
            f"expected_r={self.LABEL_WEIGHT / np.hypot(self.LABEL_WEIGHT, self.NOISE_SD):.6g}",
            f"oracle_r={oracle_r:.6g}",
            f"expected_r_band={self.HELD_OUT_R_FLOOR:.6g},{oracle_r + self.HELD_OUT_R_SLACK:.6g}",
        ] + tilt_lines
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        self.LOGGER.info(f"Wrote ground truth to {path}, oracle r {oracle_r:.3f}")
        return path

    def write_config(self, path: Path) -> Path:
        first = self.conversation_ids[0]
        lines = [
            "# generated by the synth command",
            "manifest = manifest.csv",
            f"language = {self.language}",
            f"holdout = {self.conversation_ids[-1]}",
            "model = linear",
            "out = results",
            f"seed = {self.seed}",
            f"agreement_a = labels/{first}_reduction.csv",
            f"agreement_b = labels/{first}_reduction_b.csv",
        ]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    @staticmethod
    def read_truth(path) -> dict:
        """
        Parses a truth sidecar; tilt segments are collected into a list
        """
        truth = {"tilt_segments": []}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            key, value = line.split("=", 1)
            if key == "tilt_segment":
                conversation_id, channel, start_ms, end_ms, slope = value.split(",")
                truth["tilt_segments"].append((conversation_id, channel, int(start_ms), int(end_ms), float(slope)))
            elif key == "expected_r_band":
                low, high = value.split(",")
                truth[key] = (float(low), float(high))
            else:
                truth[key] = value
        return truth

    @classmethod
    def from_config(cls, config: RunConfig):
        return cls(config.seed, config.synth_conversations, config.synth_seconds, config.language)
