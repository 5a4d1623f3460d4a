class BaseReductionException(Exception):
    pass


class RecordNotFoundException(BaseReductionException):
    def __init__(self, record_path):
        self.record_path = record_path

    def __str__(self):
        return f"{self.record_path} not found"


class UnableToAccessException(BaseReductionException):
    def __init__(self, record_path):
        self.record_path = record_path

    def __str__(self):
        return f"unable to read record {self.record_path}"


class UnsupportedFormatException(BaseReductionException):
    def __init__(self, record_path, detail):
        self.record_path = record_path
        self.detail = detail

    def __str__(self):
        return f"{self.record_path}: unsupported audio ({self.detail})"


class EmptyAudioException(BaseReductionException):
    def __init__(self, record_path):
        self.record_path = record_path

    def __str__(self):
        return f"{self.record_path} contains no audio"


class ManifestException(BaseReductionException):
    def __init__(self, record_path, line, reason):
        self.record_path = record_path
        self.line = line
        self.reason = reason

    def __str__(self):
        return f"{self.record_path}:{self.line}: {self.reason}"


class RegionFormatException(BaseReductionException):
    def __init__(self, record_path, line, reason):
        self.record_path = record_path
        self.line = line
        self.reason = reason

    def __str__(self):
        return f"{self.record_path}:{self.line}: {self.reason}"


class OverlappingRegionsException(BaseReductionException):
    def __init__(self, record_path, channel, first_line, second_line):
        self.record_path = record_path
        self.channel = channel
        self.first_line = first_line
        self.second_line = second_line

    def __str__(self):
        return f"{self.record_path}: regions on lines {self.first_line} and {self.second_line} " \
               f"overlap on channel {self.channel}"


class ConfigException(BaseReductionException):
    def __init__(self, key, reason):
        self.key = key
        self.reason = reason

    def __str__(self):
        return f"config {self.key}: {self.reason}"


class NegativeTimeException(BaseReductionException):
    def __init__(self, time_ms):
        self.time_ms = time_ms

    def __str__(self):
        return f"time {self.time_ms} ms is negative"


class RangeOutsideRecordingException(BaseReductionException):
    def __init__(self, conversation_id, start_ms, end_ms, length_ms):
        self.conversation_id = conversation_id
        self.start_ms = start_ms
        self.end_ms = end_ms
        self.length_ms = length_ms

    def __str__(self):
        return f"{self.conversation_id}: range [{self.start_ms}, {self.end_ms}) ms " \
               f"outside recording of {self.length_ms} ms"


class UndefinedResultException(BaseReductionException):
    def __init__(self, reason):
        self.reason = reason

    def __str__(self):
        return f"undefined result: {self.reason}"


class InsufficientDataException(BaseReductionException):
    def __init__(self, reason):
        self.reason = reason

    def __str__(self):
        return f"insufficient data: {self.reason}"


class DimensionMismatchException(BaseReductionException):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got

    def __str__(self):
        return f"expected {self.expected} columns, got {self.got}"


class SchemaMismatchException(BaseReductionException):
    def __init__(self, record_path):
        self.record_path = record_path

    def __str__(self):
        return f"{self.record_path}: feature column checksum does not match"


class UnknownConversationException(BaseReductionException):
    def __init__(self, conversation_id):
        self.conversation_id = conversation_id

    def __str__(self):
        return f"unknown conversation {self.conversation_id}"
