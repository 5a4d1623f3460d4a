from pathlib import Path
from typing import List, Union

import pandas as pd

from errors import OverlappingRegionsException, RegionFormatException
from handlers.base_handler import BaseHandler
from logger import Logger
from records.region import FunctionRegion, ReductionRegion
from validator import Validator


class RegionHandler(BaseHandler):
    """
    Region File Handler class
    Reads and writes annotation regions as CSV:
        channel,start_ms,end_ms,label   for reduction files
        channel,start_ms,end_ms,tag     for function files

    Constants:
        HANDLER_NAME    name of the handler
        LOGGER          logger instance
    """
    HANDLER_NAME = "regions"
    LOGGER = Logger(HANDLER_NAME)

    COLUMNS = ["channel", "start_ms", "end_ms"]

    def read(self, path) -> List[Union[ReductionRegion, FunctionRegion]]:
        """
        Parses a region file, detecting its kind from the header

        :raises RegionFormatException:       on malformed rows or unknown labels
        :raises OverlappingRegionsException: if reduction regions overlap on a channel

        :param path:    region file location
        :return:        regions in file order
        """
        path = self.check_file(path)
        self.LOGGER.debug(f"Reading regions at {path}")
        table = self.read_table(path, dtype=str, keep_default_na=False)

        missing = [column for column in self.COLUMNS if column not in table.columns]
        if missing:
            raise RegionFormatException(path, 1, f"missing columns {', '.join(missing)}")

        if "label" in table.columns:
            regions = self._parse_reduction(table, path)
        elif "tag" in table.columns:
            regions = self._parse_function(table, path)
        else:
            raise RegionFormatException(path, 1, "expected a label or tag column")

        self.LOGGER.info(f"Read {len(regions)} regions from {path}")
        return regions

    def read_reduction(self, path) -> List[ReductionRegion]:
        regions = self.read(path)
        if regions and not isinstance(regions[0], ReductionRegion):
            raise RegionFormatException(path, 1, "expected a label column")
        return regions

    def read_function(self, path) -> List[FunctionRegion]:
        regions = self.read(path)
        if regions and not isinstance(regions[0], FunctionRegion):
            raise RegionFormatException(path, 1, "expected a tag column")
        return regions

    def write(self, record: List[Union[ReductionRegion, FunctionRegion]], path) -> Path:
        """
        Writes regions; reduction regions use the label column, function regions the tag column
        """
        if record and isinstance(record[0], FunctionRegion):
            columns = self.COLUMNS + ["tag"]
        else:
            columns = self.COLUMNS + ["label"]
        frame = pd.DataFrame([region.get_dict() for region in record], columns=columns)
        for column in ("start_ms", "end_ms"):
            frame[column] = [f"{value:.15g}" for value in frame[column]]
        return self.write_table(frame, path)

    def _parse_reduction(self, table: pd.DataFrame, path) -> List[ReductionRegion]:
        regions = []
        for index, row in table.iterrows():
            line = index + 2
            channel, start_ms, end_ms = self._parse_span(row, path, line)
            label = row["label"].strip().lower()
            if not Validator.level_validator(label):
                raise RegionFormatException(path, line, f"unknown label {row['label']!r}")
            level = Validator.LEVEL_ALIASES.get(label)
            if level is None:
                level = int(label)
            regions.append(ReductionRegion(channel, start_ms, end_ms, level, line))

        self._check_overlaps(regions, path)
        return regions

    def _parse_function(self, table: pd.DataFrame, path) -> List[FunctionRegion]:
        regions = []
        for index, row in table.iterrows():
            line = index + 2
            channel, start_ms, end_ms = self._parse_span(row, path, line)
            tag = row["tag"].strip().upper()
            if not Validator.tag_validator(tag):
                raise RegionFormatException(path, line, f"unknown tag {row['tag']!r}")
            regions.append(FunctionRegion(channel, start_ms, end_ms, tag, line))
        return regions

    @staticmethod
    def _parse_span(row, path, line):
        channel = row["channel"].strip().lower()
        if not Validator.channel_validator(channel):
            raise RegionFormatException(path, line, f"unknown channel {row['channel']!r}")
        try:
            start_ms = float(row["start_ms"])
            end_ms = float(row["end_ms"])
        except ValueError:
            raise RegionFormatException(path, line, "malformed time")
        if not Validator.interval_validator(start_ms, end_ms):
            raise RegionFormatException(path, line, f"start {start_ms} not before end {end_ms}")
        return channel, start_ms, end_ms

    @staticmethod
    def _check_overlaps(regions: List[ReductionRegion], path) -> None:
        for channel in Validator.CHANNELS:
            ordered = sorted((r for r in regions if r.channel == channel), key=lambda r: (r.start_ms, r.end_ms))
            for previous, current in zip(ordered, ordered[1:]):
                if current.start_ms < previous.end_ms:
                    first, second = sorted((previous.line, current.line))
                    raise OverlappingRegionsException(path, channel, first, second)
