import fnmatch
import math


class Validator:
    """
    Various predicate functions grouped in a class
    """
    LANGUAGES = ("en", "es")
    MODELS = ("linear", "knn")
    CHANNELS = ("left", "right")
    LEVEL_ALIASES = {"e": 0, "n": 1, "r": 2, "rr": 3}
    FUNCTION_TAGS = ("FI", "PC", "UC", "RE", "PW", "DP", "TC", "TG", "PF", "PO", "NEG")
    CONTROL_TAGS = ("PO", "NEG")

    @staticmethod
    def language_validator(language: str) -> bool:
        return language in Validator.LANGUAGES

    @staticmethod
    def model_validator(model: str) -> bool:
        return model in Validator.MODELS

    @staticmethod
    def channel_validator(channel: str) -> bool:
        return channel in Validator.CHANNELS

    @staticmethod
    def sample_rate_validator(sample_rate: int, minimum: int) -> bool:
        """
        Validates a sample rate

        :param sample_rate: rate in Hz
        :param minimum:     smallest accepted rate
        :return:            whether the rate is usable
        """
        return isinstance(sample_rate, int) and sample_rate >= minimum

    @staticmethod
    def level_validator(label: str) -> bool:
        """
        Validates a reduction label
        Accepts 0-3 or the e/n/r/rr aliases

        :param label:   raw label text
        :return:        whether the label is known
        """
        return label in ("0", "1", "2", "3") or label in Validator.LEVEL_ALIASES

    @staticmethod
    def tag_validator(tag: str) -> bool:
        return tag in Validator.FUNCTION_TAGS

    @staticmethod
    def interval_validator(start_ms: float, end_ms: float) -> bool:
        """
        Validates a half-open time interval

        :param start_ms:    start in milliseconds
        :param end_ms:      end in milliseconds
        :return:            whether start is nonnegative and precedes end
        """
        if not (math.isfinite(start_ms) and math.isfinite(end_ms)):
            return False
        return 0 <= start_ms < end_ms

    @staticmethod
    def column_excluded(column: str, patterns) -> bool:
        """
        Matches a feature column against exclusion patterns

        :param column:      column name such as sr_A
        :param patterns:    glob patterns such as sr_* or cr_D
        :return:            whether the column is excluded
        """
        return any(fnmatch.fnmatchcase(column, pattern) for pattern in patterns)
