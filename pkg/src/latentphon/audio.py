"""Mono 16-bit PCM WAV I/O on float arrays in [-1, 1]."""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from scipy.io import wavfile


def to_int16(x: np.ndarray) -> np.ndarray:
    return np.round(np.clip(x, -1.0, 1.0) * 32767.0).astype(np.int16)


def write_wav(path: str | Path, x: np.ndarray, sample_rate: int) -> None:
    wavfile.write(str(path), sample_rate, to_int16(np.asarray(x, dtype=np.float64)))


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    rate, data = wavfile.read(str(path))
    if data.ndim > 1:
        data = data[:, 0]
    if data.dtype == np.int16:
        data = data.astype(np.float64) / 32767.0
    else:
        data = data.astype(np.float64)
    return data, int(rate)


def wav_bytes(x: np.ndarray, sample_rate: int) -> bytes:
    buf = io.BytesIO()
    wavfile.write(buf, sample_rate, to_int16(np.asarray(x, dtype=np.float64)))
    return buf.getvalue()
