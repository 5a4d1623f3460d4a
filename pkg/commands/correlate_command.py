from pathlib import Path
from typing import List

from analysis.annotations import Annotations
from analysis.correlation import CorrelationAnalysis
from commands.base_command import BaseCommand
from config import Config
from logger import Logger


class CorrelateCommand(BaseCommand):
    """
    Correlates every feature column with the reduction labels of the corpus
    and tallies the labels
    """
    COMMAND_NAME = "correlate"
    LOGGER = Logger(COMMAND_NAME)

    def run(self) -> List[Path]:
        manifest = self.load_manifest()
        pairs = self.labeled_matrices(manifest)
        table = CorrelationAnalysis.correlation_table(
            ((matrix, labels) for _, matrix, labels in pairs), self.config.language)

        regions = []
        for entry in manifest.entries:
            regions.extend(self.region_handler.read_reduction(entry.reduction_path))

        strong = table.strong(Config.CORRELATION_FILTER)
        self.LOGGER.info(f"{len(strong)} of {len(table.entries)} columns exceed |r| {Config.CORRELATION_FILTER}")
        return [
            self.report_handler.write_correlations(table, self.out / "correlations.csv"),
            self.report_handler.write_strong(table, self.out / "correlations_strong.csv"),
            self.report_handler.write_best_spans(table, self.out / "correlations_best_span.csv"),
            self.report_handler.write_label_counts(Annotations.label_counts(regions), self.out / "label_counts.csv"),
        ]
