import os
from abc import ABC, abstractmethod
from pathlib import Path

import pandas as pd

from config import Config
from errors import RecordNotFoundException, UnableToAccessException


class BaseHandler(ABC):
    """
    Handler Base class
    Defines how artifacts are read from and written to the filesystem

    Constants:
        HANDLER_NAME    name of the handler, set by subclasses
        LOGGER          logger instance, set by subclasses
    """
    HANDLER_NAME = None
    LOGGER = None

    @abstractmethod
    def read(self, path):
        """
        Should read an artifact from a file

        :param path: location of the file
        :return: parsed record
        """
        pass

    @abstractmethod
    def write(self, record, path) -> Path:
        """
        Should write a record into a file

        :param record:  record to store
        :param path:    location of the file
        :return:        written location
        """
        pass

    def check_file(self, path) -> Path:
        """
        Checks that a path leads to a readable file

        :raises RecordNotFoundException: if the path does not exist
        :raises UnableToAccessException: if the path is not a readable file

        :param path:    location of the file
        :return:        path as a Path object
        """
        path = Path(path)
        self.LOGGER.debug(f"Checking file at {path}")

        if not path.exists():
            self.LOGGER.warning(f"File {path} not found")
            raise RecordNotFoundException(path)

        if not path.is_file() or not os.access(path, os.R_OK):
            self.LOGGER.warning(f"{path} is not a readable file")
            raise UnableToAccessException(path)

        return path

    def read_table(self, path, **kwargs) -> pd.DataFrame:
        """
        Reads a CSV file into a data frame

        :raises UnableToAccessException: if the file cannot be parsed

        :param path:    location of the file
        :return:        data frame
        """
        path = self.check_file(path)
        try:
            return pd.read_csv(path, skipinitialspace=True, **kwargs)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError, OSError):
            self.LOGGER.error(f"Cant parse {path}")
            raise UnableToAccessException(path)

    def write_table(self, frame: pd.DataFrame, path) -> Path:
        """
        Writes a data frame as CSV with six significant digits

        :raises UnableToAccessException: if the file cannot be written

        :param frame:   data frame
        :param path:    location of the file
        :return:        written location
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(path, index=False, float_format=Config.FLOAT_FORMAT, lineterminator="\n")
        except OSError:
            self.LOGGER.error(f"Unable to write {path}")
            raise UnableToAccessException(path)

        self.LOGGER.info(f"Wrote {len(frame)} rows to {path}")
        return path
