from __future__ import annotations

from dataclasses import dataclass, field
from logging import DEBUG, INFO, WARNING
from pathlib import Path
from typing import List, Optional

from errors import ConfigException, RecordNotFoundException
from validator import Validator


class Config:
    # Frame clock
    HOP_MS = 10
    WINDOW_MS = 25
    MIN_SAMPLE_RATE = 8000

    # Pitch
    PITCH_WINDOW_MS = 40
    PITCH_MIN_HZ = 50.0
    PITCH_MAX_HZ = 500.0
    VOICING_THRESHOLD = 0.45
    # first lag whose correlation reaches this share of the best peak wins (octave errors)
    PITCH_PEAK_SHARE = 0.9

    # Intensity / speech
    SILENCE_FLOOR_DB = -96.0
    SPEECH_PERCENTILE = 95
    SPEECH_MARGIN_DB = 25.0

    # Cepstrum
    CEPSTRUM_ORDER = 12
    CEPSTRUM_FFT_SIZE = 1024

    # Tilt
    TILT_BASE_HZ = 100.0
    TILT_NYQUIST_SHARE = 0.9
    TILT_MIN_BANDS = 6
    TILT_FILTER_ORDER = 8

    # Creak
    CREAK_JITTER_SCALE = 0.2
    CREAK_LOW_PITCH_SCALE = 0.25
    CREAK_CONTEXT_FRAMES = 2

    # Baseline
    BASELINE_MIN_FRAMES = 100
    MIN_SPREAD = 1e-6

    # Context spans in milliseconds relative to the predicted frame's start
    SPANS_MS = {
        "A": (-250, -100),
        "B": (-100, -20),
        "C": (-20, 20),
        "D": (20, 100),
        "E": (100, 250),
    }

    # Statistics
    CORRELATION_FILTER = 0.06
    ALPHA = 0.05
    BONFERRONI_FAMILY_SIZE = 9

    # Models
    RIDGE_LAMBDA = 1e-6
    KNN_DEFAULT_K = 5

    # Output
    FLOAT_FORMAT = "%.6g"

    # Logging
    LOGGING_FILE = "reduxcorr.log"
    LOGGING_COMMAND_LINE_LEVEL = INFO
    LOGGING_FILE_LEVEL = WARNING
    LOGGING_DEBUG_LEVEL = DEBUG


@dataclass
class RunConfig:
    """
    Run configuration loaded from a plain-text key = value file

    Attributes:
        manifest            corpus manifest path
        language            language tag, en or es
        holdout             conversation ids reserved for evaluation
        model               model kind, linear or knn
        k                   neighbors for the knn model
        ridge_lambda        ridge term for the linear model
        out                 output directory
        seed                seed for the synth command
        workers             conversations extracted concurrently
        global_mean         reference mean for function t-tests, None to derive it
        alpha               raw significance level
        bonferroni_m        Bonferroni family size
        agreement_a         first annotator's region file
        agreement_b         second annotator's region file
        exclude_columns     feature columns zeroed before training (glob patterns)
        dump_signals        whether extract also writes base-signal CSVs
        collapse_overlaps   whether function regions are collapsed to one tag
        synth_conversations conversations generated by synth
        synth_seconds       seconds per synthetic conversation
    """
    manifest: Optional[Path] = None
    language: str = "en"
    holdout: List[str] = field(default_factory=list)
    model: str = "linear"
    k: int = Config.KNN_DEFAULT_K
    ridge_lambda: float = Config.RIDGE_LAMBDA
    out: Path = Path("out")
    seed: int = 0
    workers: int = 1
    global_mean: Optional[float] = None
    alpha: float = Config.ALPHA
    bonferroni_m: int = Config.BONFERRONI_FAMILY_SIZE
    agreement_a: Optional[Path] = None
    agreement_b: Optional[Path] = None
    exclude_columns: List[str] = field(default_factory=list)
    dump_signals: bool = False
    collapse_overlaps: bool = False
    synth_conversations: int = 6
    synth_seconds: int = 100

    PATH_KEYS = ("manifest", "out", "agreement_a", "agreement_b")
    LIST_KEYS = ("holdout", "exclude_columns")
    INT_KEYS = ("k", "seed", "workers", "bonferroni_m", "synth_conversations", "synth_seconds")
    FLOAT_KEYS = ("ridge_lambda", "global_mean", "alpha")
    BOOL_KEYS = ("dump_signals", "collapse_overlaps")
    ALIASES = {"lambda": "ridge_lambda"}

    @classmethod
    def load(cls, path) -> RunConfig:
        """
        Reads a key = value config file
        Blank lines and lines starting with # are ignored

        :raises RecordNotFoundException: if the file does not exist
        :raises ConfigException:         on unknown keys or malformed values

        :param path:    config file location
        :return:        RunConfig instance
        """
        path = Path(path)
        if not path.is_file():
            raise RecordNotFoundException(path)

        values = {}
        for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigException(f"line {line_no}", "expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            values[cls.ALIASES.get(key, key)] = value

        return cls.from_dict(values, base_dir=path.parent)

    @classmethod
    def from_dict(cls, values: dict, base_dir: Path = Path(".")) -> RunConfig:
        """
        Builds a config from raw string values

        :param values:      key to raw string value
        :param base_dir:    directory relative paths resolve against
        :return:            RunConfig instance
        """
        known = {name for name in cls.__dataclass_fields__}
        kwargs = {}
        for key, value in values.items():
            if key not in known:
                raise ConfigException(key, "unknown key")
            kwargs[key] = cls._convert(key, value, base_dir)

        config = cls(**kwargs)
        config.validate()
        return config

    @classmethod
    def _convert(cls, key: str, value: str, base_dir: Path):
        try:
            if key in cls.PATH_KEYS:
                path = Path(value)
                return path if path.is_absolute() else base_dir / path
            if key in cls.LIST_KEYS:
                return [item.strip() for item in value.split(",") if item.strip()]
            if key in cls.INT_KEYS:
                return int(value)
            if key in cls.FLOAT_KEYS:
                return float(value)
            if key in cls.BOOL_KEYS:
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ValueError(value)
                return value.lower() in ("true", "1", "yes")
        except ValueError:
            raise ConfigException(key, f"malformed value {value!r}")
        return value

    def validate(self) -> None:
        """
        Checks value ranges

        :raises ConfigException: on the first invalid key
        """
        if not Validator.language_validator(self.language):
            raise ConfigException("language", f"expected en or es, got {self.language!r}")
        if not Validator.model_validator(self.model):
            raise ConfigException("model", f"expected linear or knn, got {self.model!r}")
        if self.k < 1:
            raise ConfigException("k", "must be positive")
        if self.ridge_lambda < 0:
            raise ConfigException("lambda", "must be nonnegative")
        if self.workers < 1:
            raise ConfigException("workers", "must be positive")
        if not 0 < self.alpha < 1:
            raise ConfigException("alpha", "must lie in (0, 1)")
        if self.bonferroni_m < 1:
            raise ConfigException("bonferroni_m", "must be positive")
        if self.synth_conversations < 2 or self.synth_seconds < 10:
            raise ConfigException("synth_conversations", "synth needs at least 2 conversations of 10 s")

    def check_holdout(self, conversation_ids) -> None:
        """
        Checks that every holdout id is known to the manifest

        :raises ConfigException: if an id is missing
        """
        missing = [c for c in self.holdout if c not in set(conversation_ids)]
        if missing:
            raise ConfigException("holdout", f"not in manifest: {', '.join(missing)}")
