from pathlib import Path
from typing import List

from commands.base_command import BaseCommand
from errors import ConfigException
from features.assembler import FeatureAssembler
from handlers.model_handler import ModelHandler
from logger import Logger
from models.evaluation import Evaluation


class EvaluateCommand(BaseCommand):
    """
    Scores a trained model on the holdout conversations
    """
    COMMAND_NAME = "evaluate"
    LOGGER = Logger(COMMAND_NAME)

    def __init__(self, config):
        super().__init__(config)
        self.model_handler = ModelHandler()

    def run(self) -> List[Path]:
        if not self.config.holdout:
            raise ConfigException("holdout", "evaluate needs at least one holdout conversation")

        manifest = self.load_manifest()
        model = self.model_handler.read(ModelHandler.model_path(self.out, self.config.model))
        split = Evaluation.split_by_holdout(self.labeled_rows(manifest), self.config.holdout,
                                            manifest.conversation_ids)

        test = split.test
        predictions = model.predict(FeatureAssembler.apply_mask(test.values, self.config.exclude_columns))
        report = Evaluation.evaluate(predictions, test.labels, self.config.holdout, model.MODEL_NAME,
                                     model.info.language, self.config.language)

        r = f"{report.r:.3f}" if report.defined else "undefined"
        self.LOGGER.info(f"{model.MODEL_NAME} on {', '.join(self.config.holdout)}: r = {r} over {report.n} frames")
        return [self.report_handler.write_evaluation([report], self.out / "evaluation.csv")]
