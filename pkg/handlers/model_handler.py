import io
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import pandas as pd

from config import Config
from errors import SchemaMismatchException, UnableToAccessException, UnsupportedFormatException
from handlers.base_handler import BaseHandler
from logger import Logger
from models.base_model import TrainingInfo
from models.knn_model import KnnModel
from models.linear_model import LinearModel
from models.standardizer import Standardizer
from records.features import FEATURE_COLUMNS, column_checksum


class ModelHandler(BaseHandler):
    """
    Model File Handler class
    A key=value header (model, language, lambda or k, column checksum,
    conversations, rows) followed by a CSV block:
        feature,coefficient             for linear models, intercept last
        row,label,tl_A..tm_E            for knn models, mean and sd rows first

    Numbers are written at full precision so a reloaded model predicts
    exactly what the trained one did

    Constants:
        HANDLER_NAME    name of the handler
        LOGGER          logger instance
    """
    HANDLER_NAME = "model"
    LOGGER = Logger(HANDLER_NAME)
    FLOAT_FORMAT = "%.17g"

    @staticmethod
    def model_path(out: Path, model: str) -> Path:
        return Path(out) / f"model_{model}.txt"

    def write(self, record: Union[LinearModel, KnnModel], path) -> Path:
        path = Path(path)
        if isinstance(record, LinearModel):
            table = pd.DataFrame({
                "feature": FEATURE_COLUMNS[:len(record.weights)] + ["intercept"],
                "coefficient": np.append(record.weights, record.intercept),
            })
        else:
            columns = FEATURE_COLUMNS[:record.standardizer.columns]
            table = pd.DataFrame(np.vstack([record.standardizer.mean, record.standardizer.sd, record.rows]),
                                 columns=columns)
            table.insert(0, "row", ["mean", "sd"] + [str(index) for index in range(len(record.rows))])
            table.insert(1, "label", np.append([np.nan, np.nan], record.labels))

        header = "".join(f"{key}={value}\n" for key, value in record.header().items())
        buffer = io.StringIO()
        table.to_csv(buffer, index=False, float_format=self.FLOAT_FORMAT, lineterminator="\n")

        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(header + buffer.getvalue(), encoding="utf-8")
        except OSError:
            self.LOGGER.error(f"Unable to write model to {path}")
            raise UnableToAccessException(path)

        self.LOGGER.info(f"Wrote {record.MODEL_NAME} model to {path}")
        return path

    def read(self, path) -> Union[LinearModel, KnnModel]:
        """
        Loads a model file

        :raises SchemaMismatchException:    if the column checksum differs from the current grid
        :raises UnsupportedFormatException: for unknown model kinds

        :param path:    model file location
        :return:        LinearModel or KnnModel
        """
        path = self.check_file(path)
        self.LOGGER.debug(f"Reading model at {path}")
        header, table = self._split(path)

        if header.get("columns") != column_checksum():
            self.LOGGER.error(f"{path} was trained on another feature column order")
            raise SchemaMismatchException(path)

        conversations = [item for item in header.get("conversations", "").split(";") if item]
        info = TrainingInfo(header.get("language", ""), conversations, int(header.get("rows", 0)),
                            header["columns"])

        kind = header.get("model")
        if kind == LinearModel.MODEL_NAME:
            coefficients = dict(zip(table["feature"], table["coefficient"].astype(np.float64)))
            weights = np.array([coefficients[column] for column in FEATURE_COLUMNS])
            return LinearModel(weights, coefficients["intercept"], float(header.get("lambda", Config.RIDGE_LAMBDA)),
                               info)
        if kind == KnnModel.MODEL_NAME:
            values = table[FEATURE_COLUMNS].to_numpy(dtype=np.float64)
            sd = values[1]
            standardizer = Standardizer(values[0], sd, sd < Config.MIN_SPREAD)
            labels = table["label"].to_numpy(dtype=np.float64)[2:]
            return KnnModel(standardizer, values[2:], labels, int(header["k"]), info)

        raise UnsupportedFormatException(path, f"model kind {kind!r}")

    def _split(self, path: Path) -> Tuple[dict, pd.DataFrame]:
        lines = path.read_text(encoding="utf-8").splitlines(keepends=True)
        header = {}
        for index, line in enumerate(lines):
            if "=" not in line:
                table = pd.read_csv(io.StringIO("".join(lines[index:])), dtype={"row": str, "feature": str},
                                    float_precision="round_trip")
                return header, table
            key, value = line.rstrip("\n").split("=", 1)
            header[key.strip()] = value.strip()
        raise UnsupportedFormatException(path, "model file without a table")
