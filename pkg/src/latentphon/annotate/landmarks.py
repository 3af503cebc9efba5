"""Frame features and landmark segmentation.

Frames (5 ms hop) are classified from relative energy, zero-crossing rate,
periodicity, and spectral balance; runs of frames become intervals labeled
silence / vocalic / frication / closure / burst. Vocalic intervals carry a
finer sublabel (vowel, sonorant, murmur, voicing_bar) driven by the
synthesizer's level contract: vowels ~0.8-1.0 of utterance peak, liquids and
glides ~0.5, nasal murmurs ~0.33 with little energy above 800 Hz, stop
voicing bars ~0.16.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import median_filter

from .features import periodicity_score

LBL_SILENCE = "silence"
LBL_VOCALIC = "vocalic"
LBL_FRICATION = "frication"
LBL_CLOSURE = "closure"
LBL_BURST = "burst"

SUB_VOWEL = "vowel"
SUB_SONORANT = "sonorant"
SUB_MURMUR = "murmur"
SUB_BAR = "voicing_bar"
SUB_NOISE = "noise"

# fine frame classes before interval mapping
_F_SIL = "sil"
_F_FRIC = "fric"
_F_NOISE = "noise"
_F_VOWEL = "vow"
_F_SON = "son"
_F_MUR = "mur"
_F_BAR = "bar"

_VOCALIC_FINE = {_F_VOWEL: SUB_VOWEL, _F_SON: SUB_SONORANT, _F_MUR: SUB_MURMUR, _F_BAR: SUB_BAR}


@dataclass(frozen=True)
class Thresholds:
    rel_silence: float = 0.045
    rel_vowel: float = 0.62
    rel_sonorant: float = 0.40
    rel_bar_max: float = 0.22
    zcr_hz: float = 2000.0  # mean crossing frequency that counts as frication
    periodic: float = 0.35
    murmur_high_ratio: float = 0.25  # max share of energy above 800 Hz
    min_run_frames: int = 2
    closure_max_ms: float = 160.0


@dataclass
class FrameTrack:
    hop: int
    fs: int
    times: np.ndarray
    rms: np.ndarray
    rel: np.ndarray
    zcr: np.ndarray
    periodicity: np.ndarray
    high_ratio: np.ndarray  # energy above 800 Hz / total


@dataclass
class Interval:
    label: str
    sub: str | None
    start: int  # samples
    end: int

    def dur_s(self, fs: int) -> float:
        return (self.end - self.start) / fs


def frame_track(waveform: np.ndarray, fs: int, hop_ms: float = 5.0) -> FrameTrack:
    x = np.asarray(waveform, dtype=np.float64)
    hop = max(int(hop_ms * 1e-3 * fs), 16)
    n = len(x) // hop
    if n == 0:
        raise ValueError("signal shorter than one frame")
    frames = x[: n * hop].reshape(n, hop)
    rms = np.sqrt((frames**2).mean(axis=1))
    # envelope RMS over ~20 ms (4 pitch periods) so the relative-energy track
    # does not wobble with pulse alignment inside a single 5 ms frame
    sq = (frames**2).mean(axis=1)
    env = np.sqrt(np.convolve(sq, np.ones(4) / 4, mode="same"))
    peak = float(np.max(median_filter(env, size=3))) if n >= 3 else float(env.max())
    rel = np.minimum(env / peak, 1.0) if peak > 1e-9 else np.zeros(n)
    zcr = (np.abs(np.diff(np.signbit(frames), axis=1)).sum(axis=1)) / hop

    spec = np.abs(np.fft.rfft(frames * np.hanning(hop), axis=1)) ** 2
    freqs = np.fft.rfftfreq(hop, 1.0 / fs)
    tot = spec.sum(axis=1) + 1e-20
    high_ratio = spec[:, freqs > 800.0].sum(axis=1) / tot

    per_win = int(0.024 * fs)
    periodicity = np.zeros(n)
    for i in range(n):
        c = i * hop + hop // 2
        s = max(0, c - per_win // 2)
        periodicity[i] = periodicity_score(x[s : s + per_win], fs)

    times = (np.arange(n) + 0.5) * hop / fs
    return FrameTrack(hop, fs, times, rms, rel, zcr, periodicity, high_ratio)


def _classify_frames(tr: FrameTrack, th: Thresholds) -> list[str]:
    out = []
    for rel, zcr, per, hi in zip(tr.rel, tr.zcr, tr.periodicity, tr.high_ratio):
        if rel < th.rel_silence:
            out.append(_F_SIL)
        elif zcr * tr.fs / 2.0 > th.zcr_hz:
            out.append(_F_FRIC)
        elif per < th.periodic:
            out.append(_F_NOISE)
        elif rel >= th.rel_vowel:
            out.append(_F_VOWEL)
        elif rel >= th.rel_sonorant:
            out.append(_F_SON)
        elif hi <= th.murmur_high_ratio:
            out.append(_F_BAR if rel < th.rel_bar_max else _F_MUR)
        else:
            out.append(_F_SON)
    return out


def _median_smooth(labels: list[str]) -> list[str]:
    out = list(labels)
    for i in range(1, len(labels) - 1):
        if labels[i - 1] == labels[i + 1] != labels[i]:
            out[i] = labels[i - 1]
    return out


def _runs(labels: list[str]) -> list[list]:
    runs: list[list] = []
    for i, lbl in enumerate(labels):
        if runs and runs[-1][0] == lbl:
            runs[-1][2] = i + 1
        else:
            runs.append([lbl, i, i + 1])
    return runs


def _absorb_short_runs(runs: list[list], tr: FrameTrack, th: Thresholds, fs: int) -> list[list]:
    """Merge sub-minimum runs into neighbors, keeping genuine stop bursts."""

    def keep(run, idx) -> bool:
        lbl, s, e = run
        if e - s >= th.min_run_frames:
            return True
        if lbl in (_F_FRIC, _F_NOISE):
            prev = runs[idx - 1][0] if idx > 0 else None
            if prev == _F_BAR:
                return True  # voiced-stop burst right after its voicing bar
        return False

    def is_transition_dip(run, idx) -> bool:
        # short, low-energy noise between two speech stretches is a crossfade
        # valley, not a burst or fricative: real bursts follow silence, a
        # closure, or a bar, and fricatives sustain energy above the valleys
        lbl, s, e = run
        if lbl not in (_F_FRIC, _F_NOISE) or (e - s) * tr.hop / fs > 0.035:
            return False
        if lbl == _F_FRIC and float(np.max(tr.rel[s:e])) >= 0.42:
            return False  # sustained high-ZCR energy: a real (short) fricative
        prev = runs[idx - 1][0] if idx > 0 else None
        nxt = runs[idx + 1][0] if idx + 1 < len(runs) else None
        if prev in (_F_VOWEL, _F_SON, _F_MUR, _F_FRIC):
            return True  # fade out of voiced/frication material, any successor
        # onset ramp: 1-2 aperiodic frames where a vocalic segment fades in
        if (
            prev in (None, _F_SIL)
            and nxt in _VOCALIC_FINE
            and (e - s) * tr.hop / fs < 0.025
        ):
            return True
        return False

    changed = True
    while changed and len(runs) > 1:
        changed = False
        for idx, run in enumerate(runs):
            if keep(run, idx) and not is_transition_dip(run, idx):
                continue
            left = runs[idx - 1] if idx > 0 else None
            right = runs[idx + 1] if idx + 1 < len(runs) else None
            target = left if left and (not right or (left[2] - left[1]) >= (right[2] - right[1])) else right
            target_lbl = target[0]
            run[0] = target_lbl
            merged: list[list] = []
            for r in runs:
                if merged and merged[-1][0] == r[0]:
                    merged[-1][2] = r[2]
                else:
                    merged.append(r)
            runs = merged
            changed = True
            break
    # transitional slivers: vocalic runs too short to be real segments merge
    # into an adjacent vocalic run (aspiration tails, crossfade edges)
    min_seg = max(2, int(0.025 * fs / tr.hop))
    changed = True
    while changed and len(runs) > 1:
        changed = False
        for idx, (lbl, s, e) in enumerate(runs):
            if lbl not in (_F_SON, _F_MUR, _F_BAR) or e - s >= min_seg:
                continue
            left = runs[idx - 1] if idx > 0 else None
            right = runs[idx + 1] if idx + 1 < len(runs) else None
            cands = [r for r in (left, right) if r is not None and r[0] in _VOCALIC_FINE]
            if not cands:
                continue
            vowels = [r for r in cands if r[0] == _F_VOWEL]
            target = vowels[0] if vowels else max(cands, key=lambda r: r[2] - r[1])
            runs[idx][0] = target[0]
            merged = []
            for r in runs:
                if merged and merged[-1][0] == r[0]:
                    merged[-1][2] = r[2]
                else:
                    merged.append(r)
            runs = merged
            changed = True
            break
    return runs


def segment_landmarks(
    waveform: np.ndarray, fs: int, thresholds: Thresholds | None = None
) -> list[Interval]:
    """Non-overlapping labeled intervals covering the whole signal."""
    th = thresholds or Thresholds()
    x = np.asarray(waveform, dtype=np.float64)
    if x.size == 0 or float(np.max(np.abs(x))) < 1e-6:
        return [Interval(LBL_SILENCE, None, 0, len(x))]
    tr = frame_track(x, fs)
    labels = _median_smooth(_classify_frames(tr, th))
    runs = _absorb_short_runs(_runs(labels), tr, th, fs)

    speech_idx = [i for i, r in enumerate(runs) if r[0] != _F_SIL]
    first_speech = speech_idx[0] if speech_idx else None
    last_speech = speech_idx[-1] if speech_idx else None
    hop = tr.hop

    intervals: list[Interval] = []
    for idx, (lbl, s, e) in enumerate(runs):
        start = s * hop
        end = e * hop if idx < len(runs) - 1 else len(x)
        if lbl == _F_SIL:
            flanked = (
                first_speech is not None
                and first_speech < idx < last_speech
                and (e - s) * hop / fs <= th.closure_max_ms / 1000.0
            )
            intervals.append(Interval(LBL_CLOSURE if flanked else LBL_SILENCE, None, start, end))
        elif lbl in _VOCALIC_FINE:
            sub = _VOCALIC_FINE[lbl]
            if (
                sub in (SUB_MURMUR, SUB_BAR)
                and not any(iv.label != LBL_SILENCE for iv in intervals)
                and float(np.mean(tr.high_ratio[s:e])) > 0.12
            ):
                # aspiration at utterance onset: murmur-quiet but not low-band
                intervals.append(Interval(LBL_BURST, SUB_NOISE, start, end))
            else:
                intervals.append(Interval(LBL_VOCALIC, sub, start, end))
        else:
            prev = intervals[-1] if intervals else None
            after_stop_gap = prev is not None and (
                prev.label == LBL_CLOSURE
                or (prev.label == LBL_VOCALIC and prev.sub == SUB_BAR)
            )
            # aperiodic low-ZCR noise is burst/aspiration; high-ZCR is frication
            if after_stop_gap or lbl == _F_NOISE:
                intervals.append(Interval(LBL_BURST, SUB_NOISE, start, end))
            else:
                intervals.append(Interval(LBL_FRICATION, SUB_NOISE, start, end))
    return intervals
