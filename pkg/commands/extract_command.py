from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import List

from tqdm import tqdm

from commands.base_command import BaseCommand
from extractors.signal_analyzer import SignalAnalyzer
from features.assembler import FeatureAssembler
from handlers.matrix_handler import MatrixHandler
from logger import Logger
from records.manifest import ManifestEntry
from validator import Validator


class ExtractCommand(BaseCommand):
    """
    Writes one feature matrix per conversation channel, restricted to the
    manifest's annotated range; conversations run concurrently and their
    files are reported in conversation order
    """
    COMMAND_NAME = "extract"
    LOGGER = Logger(COMMAND_NAME)

    def run(self) -> List[Path]:
        manifest = self.load_manifest()
        results = {}

        with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
            futures = {executor.submit(self.extract, entry): entry.conversation_id for entry in manifest.entries}
            for future in tqdm(as_completed(futures), total=len(futures), desc="extract", unit="conv"):
                results[futures[future]] = future.result()

        written = [path for conversation_id in sorted(results) for path in results[conversation_id]]
        self.LOGGER.info(f"Extracted {len(written)} files for {len(results)} conversations")
        return written

    def extract(self, entry: ManifestEntry) -> List[Path]:
        """
        Analyzes both channels of a conversation and stores their feature matrices
        """
        recording = self.wav_handler.read(entry.wav_path, entry.conversation_id)
        analyzer = SignalAnalyzer()
        assembler = FeatureAssembler(analyzer)

        written = []
        for channel in Validator.CHANNELS:
            signals = analyzer.analyze(recording.channel(channel), recording.sample_rate)
            baseline = analyzer.build_baseline(signals)
            matrix = assembler.feature_matrix(recording, channel, entry.start_ms, entry.end_ms, signals, baseline)
            written.append(self.matrix_handler.write(
                matrix, MatrixHandler.feature_path(self.out, entry.conversation_id, channel)))
            if self.config.dump_signals:
                written.append(self.matrix_handler.write_signals(
                    signals, MatrixHandler.signal_path(self.out, entry.conversation_id, channel)))
        return written
