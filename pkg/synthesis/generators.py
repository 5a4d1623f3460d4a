"""
Deterministic test signals
Every generator returns float64 samples in [-1, 1]
"""
from typing import Sequence

import numpy as np

from config import Config
from extractors.tilt_extractor import TiltExtractor

SAMPLE_RATE = 16000


def sample_count(seconds: float, sample_rate: int = SAMPLE_RATE) -> int:
    return int(round(seconds * sample_rate))


def silence(seconds: float, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    return np.zeros(sample_count(seconds, sample_rate))


def sine(frequency: float, seconds: float, sample_rate: int = SAMPLE_RATE, amplitude: float = 1.0,
         phase: float = 0.0) -> np.ndarray:
    t = np.arange(sample_count(seconds, sample_rate)) / sample_rate
    return amplitude * np.sin(2.0 * np.pi * frequency * t + phase)


def constant(value: float, seconds: float, sample_rate: int = SAMPLE_RATE) -> np.ndarray:
    return np.full(sample_count(seconds, sample_rate), float(value))


def white_noise(seconds: float, rng: np.random.Generator, sample_rate: int = SAMPLE_RATE,
                rms: float = 0.5) -> np.ndarray:
    """
    Gaussian noise clipped to full scale
    """
    return np.clip(rng.normal(0.0, rms, sample_count(seconds, sample_rate)), -1.0, 1.0)


def harmonic_complex(f0, seconds: float, sample_rate: int = SAMPLE_RATE, amplitude: float = 0.5,
                     rolloff_db_per_octave: float = -6.0, top_hz: float = 4000.0) -> np.ndarray:
    """
    Cosine-phase harmonic series, a steady vowel stand-in

    :param f0:                      fundamental in Hz, scalar or per-sample contour
    :param seconds:                 duration
    :param sample_rate:             rate in Hz
    :param amplitude:               peak amplitude of the summed waveform
    :param rolloff_db_per_octave:   harmonic level change per octave above f0
    :param top_hz:                  highest harmonic frequency
    :return:                        samples
    """
    count = sample_count(seconds, sample_rate)
    contour = np.broadcast_to(np.asarray(f0, dtype=np.float64), (count,))
    phase = 2.0 * np.pi * np.cumsum(contour) / sample_rate
    phase -= phase[0] if count else 0.0

    harmonics = max(1, int(top_hz // max(float(contour.max()) if count else 1.0, 1.0)))
    signal = np.zeros(count)
    for harmonic in range(1, harmonics + 1):
        gain = 10.0 ** (rolloff_db_per_octave * np.log2(harmonic) / 20.0)
        signal += gain * np.cos(harmonic * phase)

    peak = np.abs(signal).max() if count else 0.0
    return amplitude * signal / peak if peak > 0 else signal


def pulse_train(periods_ms: Sequence[float], seconds: float, sample_rate: int = SAMPLE_RATE,
                amplitude: float = 0.5, pulse_ms: float = 1.0) -> np.ndarray:
    """
    Train of short Hann pulses whose spacing cycles through periods_ms
    Alternating 8 and 12 ms periods give a strongly jittered, creak-like source
    """
    count = sample_count(seconds, sample_rate)
    pulse = np.hanning(max(3, int(round(pulse_ms * sample_rate / 1000.0))))
    signal = np.zeros(count + len(pulse))

    position, index = 0.0, 0
    while position < count:
        start = int(round(position))
        signal[start:start + len(pulse)] += pulse
        position += periods_ms[index % len(periods_ms)] * sample_rate / 1000.0
        index += 1
    return amplitude * signal[:count]


def duty_cycle(on_seconds: float, off_seconds: float, cycles: int, sample_rate: int = SAMPLE_RATE,
               frequency: float = 200.0, amplitude: float = 0.5) -> np.ndarray:
    """
    Tone bursts alternating with digital silence, starting with the tone
    """
    burst = sine(frequency, on_seconds, sample_rate, amplitude)
    gap = silence(off_seconds, sample_rate)
    return np.concatenate([np.concatenate([burst, gap]) for _ in range(cycles)])


def band_levels_db(slope_db_per_octave: float, bands: int, top_db: float) -> np.ndarray:
    """
    Per-band amplitude levels with a planted slope, the loudest band at top_db
    """
    levels = slope_db_per_octave * np.arange(bands) / 3.0
    return levels - levels.max() + top_db


def tilt_probe(slope_db_per_octave: float, seconds: float, sample_rate: int = SAMPLE_RATE,
               top_db: float = -30.0) -> np.ndarray:
    """
    One sinusoid per 1/3-octave band center with levels falling (or rising)
    by slope / 3 dB per band; its spectral tilt is the planted slope

    :param slope_db_per_octave: planted tilt
    :param seconds:             duration
    :param sample_rate:         rate in Hz
    :param top_db:              amplitude of the loudest component in dBFS
    :return:                    samples
    """
    centers = TiltExtractor.band_centers(sample_rate)
    levels = band_levels_db(slope_db_per_octave, len(centers), top_db)
    signal = np.zeros(sample_count(seconds, sample_rate))
    for index, (center, level) in enumerate(zip(centers, levels)):
        signal += sine(center, seconds, sample_rate, 10.0 ** (level / 20.0), phase=0.7 * index)
    return signal


def fade(signal: np.ndarray, sample_rate: int = SAMPLE_RATE, ms: float = Config.HOP_MS) -> np.ndarray:
    """
    Raised-cosine onset and offset so concatenated segments do not click
    """
    length = min(len(signal) // 2, int(sample_rate * ms / 1000.0))
    if length == 0:
        return signal
    ramp = 0.5 - 0.5 * np.cos(np.pi * np.arange(length) / length)
    signal = signal.copy()
    signal[:length] *= ramp
    signal[-length:] *= ramp[::-1]
    return signal
