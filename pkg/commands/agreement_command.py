import math
from pathlib import Path
from typing import List

from analysis.annotations import Annotations
from commands.base_command import BaseCommand
from errors import ConfigException, UndefinedResultException
from logger import Logger
from records.recording import FrameClock


class AgreementCommand(BaseCommand):
    """
    Compares two annotators' reduction files over the same segmentation:
    confusion matrix plus region-level and frame-level correlation
    """
    COMMAND_NAME = "agreement"
    LOGGER = Logger(COMMAND_NAME)

    def run(self) -> List[Path]:
        if self.config.agreement_a is None or self.config.agreement_b is None:
            raise ConfigException("agreement_a", "agreement needs agreement_a and agreement_b")

        regions_a = self.region_handler.read_reduction(self.config.agreement_a)
        regions_b = self.region_handler.read_reduction(self.config.agreement_b)

        matrix = Annotations.confusion_matrix(regions_a, regions_b)
        self.LOGGER.info(f"{matrix.paired} paired regions, {matrix.off_diagonal()} disagreements")

        rows = []
        try:
            r, n = Annotations.agreement_correlation(regions_a, regions_b)
            rows.append(("region", r, n))
        except UndefinedResultException as e:
            self.LOGGER.warning(f"Region agreement: {e}")
            rows.append(("region", None, matrix.paired))

        end_ms = max([region.end_ms for region in regions_a + regions_b], default=0.0)
        frame_count = FrameClock.first_frame_at_or_after(end_ms)
        try:
            r, n = Annotations.frame_agreement(regions_a, regions_b, frame_count)
            rows.append(("frame", r, n))
        except UndefinedResultException as e:
            self.LOGGER.warning(f"Frame agreement: {e}")
            rows.append(("frame", None, 0))

        for level, r, n in rows:
            self.LOGGER.info(f"{level} agreement r = {'undefined' if r is None or math.isnan(r) else f'{r:.3f}'}"
                             f" over {n}")
        return [
            self.report_handler.write_confusion(matrix, self.out / "confusion.csv"),
            self.report_handler.write_agreement(rows, self.out / "agreement.csv"),
        ]
