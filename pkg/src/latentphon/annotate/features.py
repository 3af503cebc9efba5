"""Low-level acoustic measurements: formants, voicing, spectrograms.

Formants come from autocorrelation LPC (order ~ 2 + fs/2000) with the
pre-emphasis matched to the synthesizer's -6 dB/oct source tilt; voicing is
the peak of the normalized autocorrelation inside the 80-350 Hz lag band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_toeplitz
from scipy.signal import butter, lfilter, stft

VOICING_THRESHOLD = 0.35
F0_BAND = (80.0, 350.0)
FRONTNESS_F2_HZ = 1550.0


class AnnotationError(ValueError):
    pass


@dataclass
class FormantMeasurement:
    f1_hz: float
    f2_hz: float
    f3_hz: float | None
    bandwidths: tuple[float, ...]
    frame_times: np.ndarray
    frame_f1: np.ndarray
    frame_f2: np.ndarray

    def __post_init__(self):
        if not (0 < self.f1_hz < self.f2_hz):
            raise AnnotationError(
                f"formant ordering violated: F1={self.f1_hz}, F2={self.f2_hz}"
            )


def preemphasis_coefficient(fs: int) -> float:
    # inverse of the synthesis source tilt (one pole at 800 Hz)
    return math.exp(-2.0 * math.pi * 800.0 / fs)


def lpc_order(fs: int) -> int:
    return 2 + round(fs / 2000)


def _lpc_peaks(frame: np.ndarray, fs: int, order: int) -> list[tuple[float, float]]:
    """(frequency, bandwidth) of resonant LPC poles, ascending in frequency."""
    w = frame * np.hamming(len(frame))
    r = np.correlate(w, w, "full")[len(w) - 1 : len(w) + order]
    if r[0] <= 0:
        return []
    r = r + 1e-12 * r[0] * np.arange(order + 1) ** 0  # guard exact singularity
    try:
        a = solve_toeplitz(r[:order], r[1 : order + 1])
    except np.linalg.LinAlgError:
        return []
    poles = np.roots(np.r_[1.0, -a])
    poles = poles[np.imag(poles) > 0]
    freqs = np.angle(poles) * fs / (2.0 * np.pi)
    bws = -fs / np.pi * np.log(np.clip(np.abs(poles), 1e-12, None))
    keep = (freqs > 120.0) & (freqs < 0.48 * fs) & (bws < 700.0)
    pairs = sorted(zip(freqs[keep], bws[keep]))
    return [(float(f), float(b)) for f, b in pairs]


def measure_formants(
    waveform: np.ndarray,
    interval: tuple[int, int],
    fs: int,
    win_ms: float = 25.0,
    hop_ms: float = 5.0,
) -> FormantMeasurement:
    """Median F1/F2(/F3) over LPC frames inside [start, end) samples.

    Raises AnnotationError for intervals under 30 ms or without a stable
    two-formant structure in most frames.
    """
    start, end = interval
    if (end - start) / fs < 0.030:
        raise AnnotationError("interval too short for formant measurement")
    x = np.asarray(waveform, dtype=np.float64)[start:end]
    mu = preemphasis_coefficient(fs)
    x = np.append(x[0], x[1:] - mu * x[:-1])
    win = max(int(win_ms * 1e-3 * fs), 64)
    hop = max(int(hop_ms * 1e-3 * fs), 16)
    win = min(win, len(x))
    order = lpc_order(fs)

    f1s, f2s, f3s, times = [], [], [], []
    for s in range(0, len(x) - win + 1, hop):
        peaks = _lpc_peaks(x[s : s + win], fs, order)
        if len(peaks) >= 2:
            f1s.append(peaks[0][0])
            f2s.append(peaks[1][0])
            f3s.append(peaks[2][0] if len(peaks) >= 3 else np.nan)
            times.append((start + s + win / 2) / fs)
    n_frames = max(1, (len(x) - win) // hop + 1)
    if len(f1s) < max(1, int(0.6 * n_frames)):
        raise AnnotationError("no stable formant structure in interval")
    f3 = float(np.nanmedian(f3s)) if np.any(np.isfinite(f3s)) else None
    return FormantMeasurement(
        f1_hz=float(np.median(f1s)),
        f2_hz=float(np.median(f2s)),
        f3_hz=f3,
        bandwidths=(),
        frame_times=np.array(times),
        frame_f1=np.array(f1s),
        frame_f2=np.array(f2s),
    )


def periodicity_score(x: np.ndarray, fs: int, unbias: bool = False) -> float:
    """Peak of the normalized autocorrelation within the 80-350 Hz lag band.

    The peak must persist at twice its lag (two-period consistency); a single
    resonance ringing in noise decays across periods and is scored by its
    weaker second peak, while true glottal pulsing keeps both high.
    """
    x = np.asarray(x, dtype=np.float64)
    x = x - np.mean(x)
    r0 = float(np.dot(x, x))
    if r0 < 1e-12:
        return 0.0
    lo = int(fs / F0_BAND[1])
    hi = min(int(fs / F0_BAND[0]) + 1, len(x) - 1)
    if hi <= lo:
        return 0.0
    r = np.correlate(x, x, "full")[len(x) - 1 :] / r0
    n = len(x)

    def corrected(value: float, lag_: int) -> float:
        if not unbias:
            return value
        # exact-lag taper compensation; only for interval-level measurement
        return min(value / max(1.0 - lag_ / n, 1e-3), 1.0)

    lag = lo + int(np.argmax(r[lo:hi]))
    peak = corrected(float(r[lag]), lag)
    lo2, hi2 = int(1.8 * lag), min(int(2.2 * lag) + 1, len(r))
    if hi2 <= lo2 or lo2 >= int(0.75 * len(r)):
        return peak  # window too short to see the second period
    lag2 = lo2 + int(np.argmax(r[lo2:hi2]))
    return float(min(peak, corrected(float(r[lag2]), lag2)))


def detect_voicing(
    waveform: np.ndarray, interval: tuple[int, int], fs: int
) -> tuple[bool, float]:
    """Voicing decision plus periodicity score over an interval (>= 20 ms).

    The autocorrelation is taken on the band below 700 Hz, where the glottal
    voicing bar lives, so frication noise cannot mask it; an interval whose
    low band carries almost no energy is scored 0 outright.
    """
    start, end = interval
    if (end - start) / fs < 0.020:
        raise AnnotationError("interval too short for voicing detection")
    x = np.asarray(waveform, dtype=np.float64)[start:end]
    b, a = butter(4, 700.0 / (fs / 2), btype="low")
    low = lfilter(b, a, x)
    full_rms = float(np.sqrt(np.mean(x**2)))
    low_rms = float(np.sqrt(np.mean(low**2)))
    if full_rms < 1e-9 or low_rms < 0.08 * full_rms:
        return False, 0.0
    win = min(len(low), int(0.040 * fs))
    hop = max(win // 2, 1)
    scores = [
        periodicity_score(low[s : s + win], fs, unbias=True)
        for s in range(0, len(low) - win + 1, hop)
    ] or [periodicity_score(low, fs, unbias=True)]
    score = float(np.median(scores))
    return score > VOICING_THRESHOLD, score


@dataclass
class SpectrogramGrid:
    values: np.ndarray  # (n_freqs, n_frames) linear magnitudes
    times: np.ndarray
    freqs: np.ndarray

    def to_dict(self) -> dict:
        return {
            "values": self.values.tolist(),
            "times": self.times.tolist(),
            "freqs": self.freqs.tolist(),
        }


def compute_spectrogram(
    waveform: np.ndarray,
    fs: int,
    window_ms: float = 5.0,
    max_hz: float | None = None,
) -> SpectrogramGrid:
    """Short-time Fourier magnitude grid, optionally cropped to [0, max_hz]."""
    x = np.asarray(waveform, dtype=np.float64)
    if x.size == 0:
        raise AnnotationError("empty signal")
    nperseg = int(window_ms * 1e-3 * fs)
    if nperseg > x.size:
        raise AnnotationError("window longer than signal")
    freqs, times, z = stft(
        x, fs=fs, nperseg=nperseg, noverlap=nperseg // 2, padded=False, boundary=None
    )
    mag = np.abs(z)
    if max_hz is not None:
        keep = freqs <= max_hz
        freqs, mag = freqs[keep], mag[keep]
    return SpectrogramGrid(values=mag, times=times, freqs=freqs)
