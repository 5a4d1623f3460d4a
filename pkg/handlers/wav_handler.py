from pathlib import Path

import numpy as np
import soundfile as sf

from config import Config
from errors import EmptyAudioException, UnableToAccessException, UnsupportedFormatException
from handlers.base_handler import BaseHandler
from logger import Logger
from records.recording import AudioRecording, FrameClock
from validator import Validator


class WavHandler(BaseHandler):
    """
    RIFF WAVE Handler class
    Reads and writes two-channel conversation audio
    Inherits from BaseHandler

    Constants:
        HANDLER_NAME    name of the handler
        LOGGER          logger instance
        SUBTYPES        accepted sample encodings
    """
    HANDLER_NAME = "wav"
    LOGGER = Logger(HANDLER_NAME)
    SUBTYPES = ("PCM_16", "FLOAT")
    PCM16_SCALE = 32768.0

    def read(self, path, conversation_id: str = None) -> AudioRecording:
        """
        Loads a conversation recording
        Samples are normalized to [-1, 1]; a mono file is copied into both channels

        :raises RecordNotFoundException:    if the file does not exist
        :raises UnableToAccessException:    if libsndfile cannot open it
        :raises UnsupportedFormatException: for codecs other than PCM16 / float32 WAVE
        :raises EmptyAudioException:        if the file holds no samples

        :param path:            location of the WAV file
        :param conversation_id: conversation name, the file stem by default
        :return:                AudioRecording instance
        """
        path = self.check_file(path)
        if conversation_id is None:
            conversation_id = path.stem
        self.LOGGER.debug(f"Loading recording {conversation_id} from {path}")

        try:
            info = sf.info(str(path))
        except RuntimeError:
            self.LOGGER.error(f"Cant read audio at {path}")
            raise UnableToAccessException(path)

        if info.format != "WAV" or info.subtype not in self.SUBTYPES:
            raise UnsupportedFormatException(path, f"{info.format}/{info.subtype}")
        if info.channels not in (1, 2):
            raise UnsupportedFormatException(path, f"{info.channels} channels")
        if not Validator.sample_rate_validator(int(info.samplerate), Config.MIN_SAMPLE_RATE):
            raise UnsupportedFormatException(path, f"sample rate {info.samplerate} Hz")
        if info.frames == 0:
            raise EmptyAudioException(path)

        try:
            data, sample_rate = sf.read(str(path), dtype="float64", always_2d=True)
        except RuntimeError:
            self.LOGGER.error(f"Cant decode audio at {path}")
            raise UnableToAccessException(path)

        if not np.all(np.isfinite(data)):
            raise UnsupportedFormatException(path, "non-finite samples")
        if np.abs(data).max() > 1.0:
            self.LOGGER.warning(f"{path}: float samples beyond full scale, clipping")
            data = np.clip(data, -1.0, 1.0)

        duplicated = data.shape[1] == 1
        if duplicated:
            self.LOGGER.warning(f"{path} is mono, duplicating it into both channels")
            left = right = data[:, 0]
        else:
            left, right = data[:, 0], data[:, 1]

        recording = AudioRecording(
            conversation_id=conversation_id,
            sample_rate=int(sample_rate),
            left=np.array(left),
            right=np.array(right),
            duplicated_mono=duplicated,
        )
        self.LOGGER.info(f"Loaded {conversation_id}: {recording.frame_count} frames at {sample_rate} Hz")
        return recording

    def clock(self, path) -> FrameClock:
        """
        Frame clock of a recording, read from the header only
        """
        path = self.check_file(path)
        try:
            info = sf.info(str(path))
        except RuntimeError:
            self.LOGGER.error(f"Cant read audio at {path}")
            raise UnableToAccessException(path)
        return FrameClock(int(info.samplerate), int(info.frames))

    def write(self, record: AudioRecording, path, subtype: str = "PCM_16") -> Path:
        """
        Writes a recording as a two-channel WAVE file
        PCM16 output is quantized here, so reading it back is exact to half a step

        :raises UnsupportedFormatException: for subtypes other than PCM_16 / FLOAT
        :raises UnableToAccessException:    if the file cannot be written

        :param record:  AudioRecording instance
        :param path:    location of the file
        :param subtype: PCM_16 or FLOAT
        :return:        written location
        """
        path = Path(path)
        if subtype not in self.SUBTYPES:
            raise UnsupportedFormatException(path, subtype)

        data = np.column_stack([record.left, record.right])
        if subtype == "PCM_16":
            data = np.clip(np.round(data * self.PCM16_SCALE), -32768, 32767).astype(np.int16)
        else:
            data = data.astype(np.float32)

        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            sf.write(str(path), data, record.sample_rate, subtype=subtype, format="WAV")
        except (RuntimeError, OSError):
            self.LOGGER.error(f"Unable to write audio to {path}")
            raise UnableToAccessException(path)

        self.LOGGER.info(f"Wrote {record.conversation_id} to {path}")
        return path
