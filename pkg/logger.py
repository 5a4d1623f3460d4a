import logging
from typing import List

from tqdm import tqdm

from config import Config


class TqdmHandler(logging.StreamHandler):
    """
    Console handler writing through tqdm so progress bars stay on their own line
    """

    def emit(self, record: logging.LogRecord) -> None:
        try:
            tqdm.write(self.format(record), file=self.stream)
        except Exception:
            self.handleError(record)


class Logger(logging.Logger):
    """
    Logger class
    Console records go to stderr above the command line level, or above the
    debug level once verbose output is switched on; warnings and errors are
    also appended to the log file, opened on the first such record

    Constants:
        LOGGER_FORMAT   record layout shared by both handlers
        INSTANCES       every logger created, so verbosity can change after import
    """
    LOGGER_FORMAT = "%(asctime)s\t%(levelname)-7s\t%(name)-12s\t%(message)s"
    INSTANCES: List["Logger"] = []
    VERBOSE = False

    def __init__(self, name):
        super().__init__(name)
        self.console = self.add_c_handler()
        if Config.LOGGING_FILE:
            self.add_f_handler()
        Logger.INSTANCES.append(self)

    @classmethod
    def console_level(cls) -> int:
        return Config.LOGGING_DEBUG_LEVEL if cls.VERBOSE else Config.LOGGING_COMMAND_LINE_LEVEL

    @classmethod
    def set_verbose(cls, verbose: bool) -> None:
        """
        Switches debug output on or off for every logger, existing ones included
        """
        cls.VERBOSE = verbose
        for logger in cls.INSTANCES:
            logger.console.setLevel(cls.console_level())

    def add_c_handler(self) -> logging.Handler:
        handler = TqdmHandler()
        handler.setLevel(self.console_level())
        handler.setFormatter(logging.Formatter(self.LOGGER_FORMAT))
        self.addHandler(handler)
        return handler

    def add_f_handler(self) -> None:
        """
        Adds file handler

        :return: None
        """
        handler = logging.FileHandler(Config.LOGGING_FILE, delay=True)
        handler.setLevel(Config.LOGGING_FILE_LEVEL)
        handler.setFormatter(logging.Formatter(self.LOGGER_FORMAT))
        self.addHandler(handler)
