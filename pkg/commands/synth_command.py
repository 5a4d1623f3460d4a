from pathlib import Path
from typing import List

from commands.base_command import BaseCommand
from logger import Logger
from synthesis.corpus import SyntheticCorpus


class SynthCommand(BaseCommand):
    """
    Generates the synthetic corpus into the output directory
    """
    COMMAND_NAME = "synth"
    LOGGER = Logger(COMMAND_NAME)

    def run(self) -> List[Path]:
        corpus = SyntheticCorpus.from_config(self.config)
        config_path = corpus.build(self.out)
        self.LOGGER.info(f"Run the pipeline with --config {config_path}")
        return [self.out / "manifest.csv", self.out / "truth.txt", config_path]
