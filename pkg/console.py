import datetime
import time
from pathlib import Path

from commands.agreement_command import AgreementCommand
from commands.correlate_command import CorrelateCommand
from commands.evaluate_command import EvaluateCommand
from commands.extract_command import ExtractCommand
from commands.functions_command import FunctionsCommand
from commands.synth_command import SynthCommand
from commands.train_command import TrainCommand
from config import RunConfig
from errors import ConfigException
from logger import Logger


class Console:
    """
    Console add-on running one pipeline command
    """
    COMMANDS = {
        ExtractCommand.COMMAND_NAME: ExtractCommand,
        CorrelateCommand.COMMAND_NAME: CorrelateCommand,
        TrainCommand.COMMAND_NAME: TrainCommand,
        EvaluateCommand.COMMAND_NAME: EvaluateCommand,
        AgreementCommand.COMMAND_NAME: AgreementCommand,
        FunctionsCommand.COMMAND_NAME: FunctionsCommand,
        SynthCommand.COMMAND_NAME: SynthCommand,
    }

    def __init__(self, command, config_path, out=None):
        """
        :param command:         name of the command
        :param config_path:     path of the run config file
        :param out:             output directory overriding the config's

        :raises ConfigException: if the command is unknown or the config is invalid
        """
        self.logger = Logger("app")

        command_cls = self.COMMANDS.get(command)
        if not command_cls:
            raise ConfigException("command", f"expected one of {', '.join(self.COMMANDS.keys())}")

        self.config = RunConfig.load(config_path)
        if out is not None:
            self.config.out = Path(out)

        self.command = command_cls(self.config)

    def run(self):
        """
        Runs the command
        :return: written files
        """
        start_time = time.time()

        self.logger.info(
            f"Running {self.command.COMMAND_NAME} "
            f"for language {self.config.language} "
            f"into {self.config.out}"
        )

        written = self.command.run()

        total_seconds = round(time.time() - start_time)
        self.logger.info(f"Wrote {len(written)} files in {datetime.timedelta(seconds=total_seconds)}!")
        return written
