from pathlib import Path
from typing import List, Optional

from analysis.functions import FunctionAnalysis, LabeledRegions
from commands.base_command import BaseCommand
from errors import ConfigException
from logger import Logger
from records.manifest import Manifest
from records.reports import FunctionStats


class FunctionsCommand(BaseCommand):
    """
    Reduction statistics per pragmatic function, for the first annotation
    pass and, where the manifest lists one, the second pass
    """
    COMMAND_NAME = "functions"
    LOGGER = Logger(COMMAND_NAME)

    def run(self) -> List[Path]:
        manifest = self.load_manifest()
        first = self.pass_stats(manifest, "function_path")
        if first is None:
            raise ConfigException("manifest", "no conversation lists a function_path")

        written = [self.report_handler.write_function_stats(first, self.out / "function_stats.csv")]
        second = self.pass_stats(manifest, "second_function_path")
        if second is not None:
            written.append(self.report_handler.write_function_stats(second, self.out / "function_stats_second.csv"))
            written.append(self.report_handler.write_table(FunctionAnalysis.compare_passes(first, second),
                                                           self.out / "function_passes.csv"))
        return written

    def pass_stats(self, manifest: Manifest, attribute: str) -> Optional[FunctionStats]:
        conversations: List[LabeledRegions] = []
        for entry in manifest.entries:
            path = getattr(entry, attribute)
            if path is None:
                continue
            regions = self.region_handler.read_function(path)
            if self.config.collapse_overlaps:
                regions = FunctionAnalysis.collapse_to_first_tag(regions)
            conversations.append((regions, self.channel_labels(entry)))

        if not conversations:
            return None
        self.LOGGER.debug(f"{attribute}: {sum(len(regions) for regions, _ in conversations)} regions")
        return FunctionAnalysis.function_stats(conversations, self.config.global_mean, self.config.alpha,
                                               self.config.bonferroni_m)
