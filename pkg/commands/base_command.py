from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from analysis.annotations import Annotations
from analysis.correlation import CorrelationAnalysis
from config import RunConfig
from errors import ConfigException
from handlers.manifest_handler import ManifestHandler
from handlers.matrix_handler import MatrixHandler
from handlers.region_handler import RegionHandler
from handlers.report_handler import ReportHandler
from handlers.wav_handler import WavHandler
from models.evaluation import LabeledMatrix
from records.features import FeatureMatrix
from records.manifest import Manifest, ManifestEntry
from records.region import FrameLabels
from validator import Validator


class BaseCommand(ABC):
    """
    Command Base class
    A command reads its inputs through the handlers and writes its reports
    into the configured output directory

    Constants:
        COMMAND_NAME    verb on the command line, set by subclasses
        LOGGER          logger instance, set by subclasses
    """
    COMMAND_NAME = None
    LOGGER = None

    def __init__(self, config: RunConfig):
        self.config = config
        self.out = Path(config.out)
        self.wav_handler = WavHandler()
        self.manifest_handler = ManifestHandler()
        self.region_handler = RegionHandler()
        self.matrix_handler = MatrixHandler()
        self.report_handler = ReportHandler()

    @abstractmethod
    def run(self) -> List[Path]:
        """
        Should execute the command

        :return: written files
        """
        pass

    def load_manifest(self) -> Manifest:
        if self.config.manifest is None:
            raise ConfigException("manifest", f"required by {self.COMMAND_NAME}")
        manifest = self.manifest_handler.read(self.config.manifest)
        self.config.check_holdout(manifest.conversation_ids)
        return manifest

    def channel_labels(self, entry: ManifestEntry) -> Dict[str, FrameLabels]:
        """
        Reduction labels of both channels of a conversation

        :raises ConfigException: if the manifest names no reduction file for the conversation
        """
        if entry.reduction_path is None:
            raise ConfigException("manifest", f"{entry.conversation_id} has no reduction_path")
        regions = self.region_handler.read_reduction(entry.reduction_path)
        frame_count = self.wav_handler.clock(entry.wav_path).frame_count
        return {
            channel: Annotations.regions_to_frames(regions, frame_count, channel)
            for channel in Validator.CHANNELS
        }

    def labeled_matrices(self, manifest: Manifest) -> List[Tuple[str, FeatureMatrix, FrameLabels]]:
        """
        Stored feature matrices with their channel labels, in conversation order
        """
        pairs = []
        for entry in manifest.entries:
            labels = self.channel_labels(entry)
            for channel in Validator.CHANNELS:
                path = MatrixHandler.feature_path(self.out, entry.conversation_id, channel)
                pairs.append((entry.conversation_id, self.matrix_handler.read(path), labels[channel]))
        return pairs

    def labeled_rows(self, manifest: Manifest) -> LabeledMatrix:
        """
        Rows of labeled frames of every conversation, with their levels
        """
        parts = []
        for conversation_id, matrix, labels in self.labeled_matrices(manifest):
            values, levels = CorrelationAnalysis.labeled_rows([(matrix, labels)])
            parts.append(LabeledMatrix(values, levels, np.full(len(levels), conversation_id, dtype=object)))
        return LabeledMatrix.concatenate(parts)
