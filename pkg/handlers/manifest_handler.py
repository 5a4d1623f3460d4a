from pathlib import Path

import pandas as pd

from errors import ManifestException
from handlers.base_handler import BaseHandler
from logger import Logger
from records.manifest import Manifest, ManifestEntry
from validator import Validator


class ManifestHandler(BaseHandler):
    """
    Corpus Manifest Handler class
    One CSV line per conversation:
        conversation_id,wav_path,annotated_start_ms,annotated_end_ms
    optionally followed by reduction_path,function_path,second_function_path

    Times are milliseconds or m:ss, relative paths resolve against the manifest directory
    """
    HANDLER_NAME = "manifest"
    LOGGER = Logger(HANDLER_NAME)

    REQUIRED = ["conversation_id", "wav_path", "annotated_start_ms", "annotated_end_ms"]
    OPTIONAL = ["reduction_path", "function_path", "second_function_path"]

    def read(self, path) -> Manifest:
        """
        Parses a manifest

        :raises ManifestException: on missing columns, malformed rows or duplicate ids

        :param path:    manifest location
        :return:        Manifest with entries sorted by conversation id
        """
        path = self.check_file(path)
        self.LOGGER.debug(f"Reading manifest at {path}")
        table = self.read_table(path, dtype=str, keep_default_na=False)

        missing = [column for column in self.REQUIRED if column not in table.columns]
        if missing:
            raise ManifestException(path, 1, f"missing columns {', '.join(missing)}")

        entries = {}
        for index, row in table.iterrows():
            line = index + 2
            conversation_id = row["conversation_id"].strip()
            if not conversation_id:
                raise ManifestException(path, line, "empty conversation id")
            if conversation_id in entries:
                raise ManifestException(path, line, f"duplicate conversation {conversation_id}")

            start_ms = self._parse_time(row["annotated_start_ms"], path, line)
            end_ms = self._parse_time(row["annotated_end_ms"], path, line)
            if not Validator.interval_validator(start_ms, end_ms):
                raise ManifestException(path, line, f"invalid annotated range [{start_ms}, {end_ms})")

            optional = {
                column: self._resolve(row[column], path) if column in table.columns else None
                for column in self.OPTIONAL
            }
            entries[conversation_id] = ManifestEntry(
                conversation_id=conversation_id,
                wav_path=self._resolve(row["wav_path"], path),
                start_ms=start_ms,
                end_ms=end_ms,
                **optional,
            )

        if not entries:
            raise ManifestException(path, 2, "no conversations")

        self.LOGGER.info(f"Manifest {path} lists {len(entries)} conversations")
        return Manifest(path=path, entries=[entries[key] for key in sorted(entries)])

    def write(self, record: Manifest, path) -> Path:
        """
        Writes a manifest, paths relative to the manifest directory when possible
        """
        path = Path(path)
        rows = []
        for entry in record.entries:
            row = entry.get_dict()
            for column in ["wav_path"] + self.OPTIONAL:
                if row[column]:
                    row[column] = self._relative(Path(row[column]), path.parent)
            row["annotated_start_ms"] = f"{entry.start_ms:.15g}"
            row["annotated_end_ms"] = f"{entry.end_ms:.15g}"
            rows.append(row)
        return self.write_table(pd.DataFrame(rows, columns=self.REQUIRED + self.OPTIONAL), path)

    @staticmethod
    def _parse_time(value: str, path, line) -> float:
        value = value.strip()
        try:
            if ":" in value:
                minutes, seconds = value.split(":", 1)
                return (int(minutes) * 60 + float(seconds)) * 1000.0
            return float(value)
        except ValueError:
            raise ManifestException(path, line, f"malformed time {value!r}")

    @staticmethod
    def _resolve(value, manifest_path: Path):
        if value is None or not str(value).strip():
            return None
        candidate = Path(str(value).strip())
        return candidate if candidate.is_absolute() else manifest_path.parent / candidate

    @staticmethod
    def _relative(path: Path, base: Path) -> str:
        try:
            return str(path.relative_to(base))
        except ValueError:
            return str(path)
