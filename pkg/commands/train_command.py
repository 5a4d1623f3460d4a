from pathlib import Path
from typing import List

from commands.base_command import BaseCommand
from features.assembler import FeatureAssembler
from handlers.model_handler import ModelHandler
from logger import Logger
from models.base_model import TrainingInfo
from models.evaluation import Evaluation
from models.knn_model import KnnModel
from models.linear_model import LinearModel


class TrainCommand(BaseCommand):
    """
    Trains the configured model on every non-holdout conversation
    """
    COMMAND_NAME = "train"
    LOGGER = Logger(COMMAND_NAME)

    def __init__(self, config):
        super().__init__(config)
        self.model_handler = ModelHandler()

    def run(self) -> List[Path]:
        manifest = self.load_manifest()
        split = Evaluation.split_by_holdout(self.labeled_rows(manifest), self.config.holdout,
                                            manifest.conversation_ids)
        train = split.train
        values = FeatureAssembler.apply_mask(train.values, self.config.exclude_columns)
        info = TrainingInfo(self.config.language, train.conversation_ids, len(train))

        if self.config.model == LinearModel.MODEL_NAME:
            model = LinearModel.train(values, train.labels, self.config.ridge_lambda, info)
        else:
            model = KnnModel.train(values, train.labels, self.config.k, info)

        return [self.model_handler.write(model, ModelHandler.model_path(self.out, self.config.model))]
