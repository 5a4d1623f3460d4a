import math
from pathlib import Path
from typing import List, Optional, Tuple

import pandas as pd

from config import Config
from handlers.base_handler import BaseHandler
from logger import Logger
from records.features import FeatureKind
from records.region import ConfusionMatrix, LabelCounts
from records.reports import CorrelationTable, EvalReport, FunctionStats


class ReportHandler(BaseHandler):
    """
    Report Handler class
    Writes analysis records as CSV reports with six significant digits;
    missing values are written empty and undefined correlations as "undefined"

    Constants:
        HANDLER_NAME    name of the handler
        LOGGER          logger instance
    """
    HANDLER_NAME = "reports"
    LOGGER = Logger(HANDLER_NAME)
    UNDEFINED = "undefined"
    LEVEL_NAMES = ["0", "1", "2", "3"]

    @staticmethod
    def number(value: Optional[float], missing: str = "") -> str:
        if value is None or (isinstance(value, float) and math.isnan(value)):
            return missing
        if isinstance(value, float) and math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return Config.FLOAT_FORMAT % value

    def read(self, path) -> pd.DataFrame:
        self.LOGGER.debug(f"Reading report at {path}")
        return self.read_table(path, keep_default_na=False, dtype=str)

    def write(self, record, path) -> Path:
        """
        Writes any supported report record

        :param record:  CorrelationTable, FunctionStats, EvalReport, ConfusionMatrix, LabelCounts or DataFrame
        :param path:    report location
        :return:        written location
        """
        if isinstance(record, CorrelationTable):
            return self.write_correlations(record, path)
        if isinstance(record, FunctionStats):
            return self.write_function_stats(record, path)
        if isinstance(record, EvalReport):
            return self.write_evaluation([record], path)
        if isinstance(record, ConfusionMatrix):
            return self.write_confusion(record, path)
        if isinstance(record, LabelCounts):
            return self.write_label_counts(record, path)
        if isinstance(record, pd.DataFrame):
            return self.write_table(record, path)
        raise TypeError(f"no report format for {type(record).__name__}")

    def write_correlations(self, table: CorrelationTable, path, entries=None) -> Path:
        entries = table.entries if entries is None else entries
        frame = pd.DataFrame([{
            "language": table.language,
            "kind": entry.kind.value,
            "span": entry.span.value,
            "r": self.number(entry.r, self.UNDEFINED),
            "n": entry.n,
        } for entry in entries], columns=["language", "kind", "span", "r", "n"])
        return self.write_table(frame, path)

    def write_strong(self, table: CorrelationTable, path, threshold: float = Config.CORRELATION_FILTER) -> Path:
        return self.write_correlations(table, path, table.strong(threshold))

    def write_best_spans(self, table: CorrelationTable, path) -> Path:
        best = [table.best_span(kind) for kind in FeatureKind]
        return self.write_correlations(table, path, [entry for entry in best if entry is not None])

    def write_function_stats(self, stats: FunctionStats, path) -> Path:
        rows = []
        for row in [stats.overall] + stats.rows:
            values = row.get_dict()
            for key in ("mean", "t", "p", "pct0", "pct1", "pct2", "pct3"):
                values[key] = self.number(values[key])
            values["bonferroni"] = "+" if row.survives else ""
            values["effect_size"] = self.number(row.effect_size)
            rows.append(values)
        return self.write_table(pd.DataFrame(rows), path)

    def write_evaluation(self, reports: List[EvalReport], path) -> Path:
        frame = pd.DataFrame([{
            **report.get_dict(),
            "r": self.number(report.r, self.UNDEFINED),
        } for report in reports], columns=["model", "train_language", "language", "holdout", "n", "r"])
        return self.write_table(frame, path)

    def write_confusion(self, matrix: ConfusionMatrix, path) -> Path:
        frame = pd.DataFrame(matrix.counts, columns=[f"b{name}" for name in self.LEVEL_NAMES])
        frame.insert(0, "a", self.LEVEL_NAMES)
        return self.write_table(frame, path)

    def write_agreement(self, rows: List[Tuple[str, Optional[float], int]], path) -> Path:
        frame = pd.DataFrame([{"level": level, "r": self.number(r, self.UNDEFINED), "n": n}
                              for level, r, n in rows], columns=["level", "r", "n"])
        return self.write_table(frame, path)

    def write_label_counts(self, counts: LabelCounts, path) -> Path:
        frame = pd.DataFrame({
            "level": self.LEVEL_NAMES,
            "regions": counts.regions,
            "frames": counts.frames,
        })
        return self.write_table(frame, path)
