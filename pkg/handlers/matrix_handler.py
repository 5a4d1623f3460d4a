from pathlib import Path

import numpy as np
import pandas as pd

from config import Config
from errors import SchemaMismatchException
from handlers.base_handler import BaseHandler
from logger import Logger
from records.features import COLUMN_COUNT, FEATURE_COLUMNS, FeatureMatrix
from records.signals import BaseSignals


class MatrixHandler(BaseHandler):
    """
    Feature Matrix Handler class
    One CSV per conversation channel:
        conversation,channel,frame,tl_A..tm_E,coverage_min

    Only the smallest coverage of each row is stored; matrices read back
    carry it in every coverage column

    Constants:
        HANDLER_NAME    name of the handler
        LOGGER          logger instance
        KEY_COLUMNS     leading identification columns
        SIGNAL_COLUMNS  base-signal dump columns
    """
    HANDLER_NAME = "matrix"
    LOGGER = Logger(HANDLER_NAME)

    KEY_COLUMNS = ["conversation", "channel", "frame"]
    COLUMNS = KEY_COLUMNS + FEATURE_COLUMNS + ["coverage_min"]
    SIGNAL_COLUMNS = ["frame", "pitch_hz", "voiced", "intensity_db", "tilt_db_per_oct", "speech", "creak"] + \
                     [f"c{index}" for index in range(1, Config.CEPSTRUM_ORDER + 1)]

    @staticmethod
    def feature_path(out: Path, conversation_id: str, channel: str) -> Path:
        return Path(out) / "features" / f"{conversation_id}_{channel}.csv"

    @staticmethod
    def signal_path(out: Path, conversation_id: str, channel: str) -> Path:
        return Path(out) / "signals" / f"{conversation_id}_{channel}.csv"

    def read(self, path) -> FeatureMatrix:
        """
        Loads a feature matrix

        :raises SchemaMismatchException: if the header is not the expected column grid

        :param path:    matrix CSV location
        :return:        FeatureMatrix instance
        """
        self.LOGGER.debug(f"Reading feature matrix at {path}")
        table = self.read_table(path, dtype={"conversation": str, "channel": str})
        if list(table.columns) != self.COLUMNS:
            self.LOGGER.error(f"{path} does not carry the {COLUMN_COUNT}-column feature grid")
            raise SchemaMismatchException(path)

        if len(table):
            conversation_id = str(table["conversation"].iloc[0])
            channel = str(table["channel"].iloc[0])
        else:
            conversation_id, channel = Path(path).stem.rsplit("_", 1)

        coverage_min = table["coverage_min"].to_numpy(dtype=np.float64)
        return FeatureMatrix(
            conversation_id=conversation_id,
            channel=channel,
            frames=table["frame"].to_numpy(dtype=np.int64),
            values=table[FEATURE_COLUMNS].to_numpy(dtype=np.float64),
            coverage=np.repeat(coverage_min[:, None], COLUMN_COUNT, axis=1),
        )

    def write(self, record: FeatureMatrix, path) -> Path:
        frame = pd.DataFrame(record.values, columns=FEATURE_COLUMNS)
        frame.insert(0, "conversation", record.conversation_id)
        frame.insert(1, "channel", record.channel)
        frame.insert(2, "frame", record.frames.astype(np.int64))
        frame["coverage_min"] = record.coverage_min()
        return self.write_table(frame, path)

    def write_signals(self, signals: BaseSignals, path) -> Path:
        """
        Dumps per-frame base signals; pitch and tilt are empty where absent
        """
        frame = pd.DataFrame({
            "frame": np.arange(signals.frame_count),
            "pitch_hz": signals.pitch,
            "voiced": signals.voiced.astype(np.int64),
            "intensity_db": signals.intensity,
            "tilt_db_per_oct": signals.tilt,
            "speech": signals.speech.astype(np.int64),
            "creak": signals.creak,
        })
        for index in range(Config.CEPSTRUM_ORDER):
            frame[f"c{index + 1}"] = signals.cepstrum[:, index]
        return self.write_table(frame[self.SIGNAL_COLUMNS], path)
