"""Source-filter synthesis of corpus items.

One waveform per entry: a glottal pulse train (declining f0 in the 180-240 Hz
band) and white noise are shaped by a cascade of three time-varying formant
resonators plus a parallel frication/burst band. Formant targets interpolate
linearly across segment boundaries; each phase's output is rescaled to its
designed relative level so the annotator's envelope cues hold by construction.

Everything is deterministic given (entry, seed, spec).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import butter, lfilter

from .corpus import CorpusEntry
from .segments import FRICATIVE, GLIDE, LIQUID, NASAL, STOP, VOWEL, Segment


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisSpec:
    """Global synthesis constants; the desk preset halves rate and window."""

    sample_rate: int = 16000
    total_samples: int = 16384
    duration_scale: float = 1.0
    frame_ms: float = 5.0
    f0_high: float = 240.0
    f0_low: float = 180.0
    f0_jitter: float = 0.05
    lead_silence_ms: float = 30.0
    peak: float = 0.85

    @classmethod
    def desk(cls) -> "SynthesisSpec":
        # one shared pitch track keeps the periodicity pattern learnable at
        # desk-scale training budgets
        return cls(
            sample_rate=8000, total_samples=4096, duration_scale=0.55, f0_jitter=0.0
        )

    def ms(self, n_ms: float) -> int:
        return int(round(n_ms * 1e-3 * self.sample_rate))


@dataclass
class _Phase:
    kind: str  # voiced | closure | burst | aspiration | frication | gap
    n: int
    formants: tuple[float, float, float]
    bandwidths: tuple[float, float, float]
    level_voiced: float = 0.0  # target RMS of the cascade path, relative units
    level_noise: float = 0.0  # target RMS of the parallel band path
    src_noise: float = 0.0  # aspiration noise injected into the cascade
    noise_band: tuple[float, float] | None = None
    tilt: float = 0.0  # one-pole lowpass strength (nasal murmur)
    segment: Segment | None = None


_BAR_FORMANTS = (250.0, 1200.0, 2400.0)
_BAR_BW = (150.0, 300.0, 400.0)


def _segment_phases(
    segs: tuple[Segment, ...], stressed: int, spec: SynthesisSpec
) -> list[_Phase]:
    phases: list[_Phase] = []
    for idx, seg in enumerate(segs):
        ac = seg.acoustics
        dur = spec.ms(ac.duration_ms * spec.duration_scale)
        f, bw = ac.formant_targets, ac.bandwidths
        if seg.category in (VOWEL, GLIDE, LIQUID, NASAL):
            level = ac.amplitude
            if seg.category == VOWEL:
                level *= 1.0 if idx == stressed else 0.8
            phases.append(
                _Phase(
                    "voiced",
                    dur,
                    f,
                    bw,
                    level_voiced=level,
                    tilt=0.85 if ac.nasal_murmur else 0.0,
                    segment=seg,
                )
            )
        elif seg.category == FRICATIVE:
            # at squeezed rates the noise band narrows; weaken the voicing bar
            # so frication keeps its high crossing rate
            bar = 0.26 if spec.sample_rate >= 12000 else 0.21
            phases.append(
                _Phase(
                    "frication",
                    dur,
                    (300.0, 1300.0, 2500.0),
                    (200.0, 350.0, 500.0),
                    level_voiced=bar if seg.voiced else 0.0,
                    level_noise=ac.noise_amplitude * ac.amplitude,
                    noise_band=ac.noise_band,
                    segment=seg,
                )
            )
        elif seg.category == STOP:
            nxt = segs[idx + 1] if idx + 1 < len(segs) else None
            follow_f = nxt.acoustics.formant_targets if nxt is not None else f
            follow_bw = nxt.acoustics.bandwidths if nxt is not None else bw
            closure = _Phase(
                "closure",
                dur,
                _BAR_FORMANTS,
                _BAR_BW,
                level_voiced=0.14 if seg.voiced else 0.0,
                tilt=0.9,
                segment=seg,
            )
            burst = _Phase(
                "burst",
                max(spec.ms(5 * spec.duration_scale), 8),
                follow_f,
                follow_bw,
                level_noise=0.5,
                noise_band=ac.noise_band,
                segment=seg,
            )
            vot = _Phase(
                "aspiration",
                spec.ms(ac.vot_ms * spec.duration_scale),
                follow_f,
                follow_bw,
                segment=seg,
            )
            if ac.vot_ms >= 50:  # aspirated: noisy formant-shaped VOT, no voicing
                vot.level_voiced = 0.30
                vot.src_noise = 1.0
            else:  # short lag: near-silent gap before voicing resumes
                vot.level_voiced = 0.05 if seg.voiced else 0.0
                vot.src_noise = 0.15
            phases.extend([closure, burst, vot])
        else:
            raise SynthesisError(f"no synthesis routine for category {seg.category}")
    return phases


def _resonator(f_hz: float, bw_hz: float, fs: int) -> tuple[np.ndarray, np.ndarray]:
    t = 1.0 / fs
    c = -math.exp(-2.0 * math.pi * bw_hz * t)
    b = 2.0 * math.exp(-math.pi * bw_hz * t) * math.cos(2.0 * math.pi * f_hz * t)
    a = 1.0 - b - c
    return np.array([a]), np.array([1.0, -b, -c])


def _pulse_train(n: int, fs: int, f0_start: float, f0_end: float, rng) -> np.ndarray:
    out = np.zeros(n)
    f0 = np.linspace(f0_start, f0_end, n)
    phase = rng.uniform(0.0, 1.0)
    acc = np.cumsum(f0 / fs) + phase
    marks = np.flatnonzero(np.diff(np.floor(acc)) > 0)
    out[marks] = 1.0
    return out


def synthesize_segments(
    segs: tuple[Segment, ...],
    stressed: int,
    seed: int,
    spec: SynthesisSpec | None = None,
) -> np.ndarray:
    """Render a segment sequence to a float waveform of spec.total_samples."""
    spec = spec or SynthesisSpec()
    fs = spec.sample_rate
    if not segs:
        return np.zeros(spec.total_samples, dtype=np.float32)

    rng = np.random.default_rng(seed)
    phases = _segment_phases(segs, stressed, spec)
    speech_n = sum(p.n for p in phases)
    onset = spec.ms(spec.lead_silence_ms) + int(rng.integers(0, spec.ms(15) + 1))
    if onset + speech_n > spec.total_samples:
        raise SynthesisError(
            f"speech span {speech_n + onset} exceeds window {spec.total_samples}"
        )

    hop = max(spec.ms(spec.frame_ms), 16)
    n_frames = (speech_n + hop - 1) // hop
    total = n_frames * hop

    # frame-level parameter tracks
    frame_mid = (np.arange(n_frames) + 0.5) * hop
    starts = np.cumsum([0] + [p.n for p in phases])
    form = np.zeros((n_frames, 3))
    bwid = np.zeros((n_frames, 3))
    tilt = np.zeros(n_frames)
    nband = np.zeros((n_frames, 2))
    idx_of = np.clip(np.searchsorted(starts, frame_mid, side="right") - 1, 0, len(phases) - 1)
    for k, p in enumerate(phases):
        sel = idx_of == k
        form[sel] = p.formants
        bwid[sel] = p.bandwidths
        tilt[sel] = p.tilt
        if p.noise_band is not None:
            center, width = p.noise_band
            if center > 0.44 * fs:  # squeezed rate: keep noise above the formants
                center = 0.44 * fs
                width = min(width, 0.8 * (fs - 2 * center))
            width = min(width, 0.35 * fs)
            nband[sel] = (center, width)

    # linear formant interpolation across boundaries of resonant phases
    resonant = [p.level_voiced > 0 or p.kind == "aspiration" for p in phases]
    for k in range(len(phases) - 1):
        if not (resonant[k] and resonant[k + 1]):
            continue
        half = min(spec.ms(10), int(0.4 * min(phases[k].n, phases[k + 1].n)))
        if half <= 0:
            continue
        b = starts[k + 1]
        in_win = (frame_mid > b - half) & (frame_mid < b + half)
        if not np.any(in_win):
            continue
        w = (frame_mid[in_win] - (b - half)) / (2 * half)
        fa, fb = np.array(phases[k].formants), np.array(phases[k + 1].formants)
        ba, bb = np.array(phases[k].bandwidths), np.array(phases[k + 1].bandwidths)
        form[in_win] = (1 - w)[:, None] * fa + w[:, None] * fb
        bwid[in_win] = (1 - w)[:, None] * ba + w[:, None] * bb

    # sample-level excitation envelopes with 5 ms edge ramps
    ramp = max(spec.ms(5), 4)

    def envelope(levels: list[float]) -> np.ndarray:
        env = np.zeros(total)
        for k, p in enumerate(phases):
            if levels[k] <= 0:
                continue
            s, e = starts[k], starts[k] + p.n
            env[s:e] = levels[k]
            r = min(ramp, p.n // 2)
            if r > 0:
                env[s : s + r] *= np.linspace(0.0, 1.0, r, endpoint=False)
                env[e - r : e] *= np.linspace(1.0, 0.0, r)
        return env

    venv = envelope([p.level_voiced if p.src_noise < 0.5 else 0.0 for p in phases])
    aspenv = envelope([p.src_noise for p in phases])
    nenv = envelope([p.level_noise for p in phases])

    # sources
    f0_mul = rng.uniform(1.0 - spec.f0_jitter, 1.0 + spec.f0_jitter) if spec.f0_jitter else 1.0
    pulses = _pulse_train(total, fs, spec.f0_high * f0_mul, spec.f0_low * f0_mul, rng)
    # gentle -6 dB/oct source tilt; keeps F2/F3 excitable by the pulse train
    a_g = math.exp(-2.0 * math.pi * 800.0 / fs)
    glottal = lfilter([1.0 - a_g], [1.0, -a_g], pulses)
    glottal /= max(np.max(np.abs(glottal)), 1e-9)
    white = rng.standard_normal(total)

    source = glottal * venv + white * aspenv * 0.25
    cascade = np.zeros(total)
    band = np.zeros(total)
    zi = [np.zeros(2) for _ in range(3)]
    zt = 0.0
    zb = np.zeros(2)
    for fr in range(n_frames):
        s, e = fr * hop, (fr + 1) * hop
        chunk = source[s:e]
        for j in range(3):
            rb, ra = _resonator(form[fr, j], bwid[fr, j], fs)
            chunk, zi_out = lfilter(rb, ra, chunk, zi=zi[j])
            zi[j] = zi_out
        if tilt[fr] > 0:
            a = tilt[fr]
            acc = zt
            out = np.empty_like(chunk)
            for i, x in enumerate(chunk):
                acc = (1 - a) * x + a * acc
                out[i] = acc
            chunk, zt = out, acc
        cascade[s:e] = chunk
        if nband[fr, 1] > 0:
            rb, ra = _resonator(nband[fr, 0], nband[fr, 1], fs)
            nb_chunk, zb = lfilter(rb, ra, white[s:e] * nenv[s:e], zi=zb)
            band[s:e] = nb_chunk

    # frication/burst noise stays out of the voicing band by construction:
    # the wide resonator has unity DC gain, so high-pass its output
    hb, ha = butter(4, 1100.0 / (fs / 2), btype="high")
    band = lfilter(hb, ha, band)

    # per-phase gain so realized RMS matches the designed relative levels
    def normalized(path: np.ndarray, levels: list[float]) -> np.ndarray:
        out = np.zeros_like(path)
        gains = np.zeros(total)
        for k, p in enumerate(phases):
            if levels[k] <= 0:
                continue
            s, e = starts[k], starts[k] + p.n
            core = path[s + (e - s) // 5 : e - (e - s) // 5]
            rms = float(np.sqrt(np.mean(core**2))) if core.size else 0.0
            if rms < 1e-9:
                continue
            gains[s:e] = levels[k] / rms
        # soften gain discontinuities without moving phase interiors
        kernel = np.ones(ramp) / ramp
        gains = np.convolve(gains, kernel, mode="same")
        out = path * gains
        return out

    voiced_levels = [max(p.level_voiced, 0.3 if p.src_noise >= 0.5 else 0.0) for p in phases]
    out = normalized(cascade, voiced_levels) + normalized(band, [p.level_noise for p in phases])

    buf = np.zeros(spec.total_samples)
    usable = min(total, speech_n)
    buf[onset : onset + usable] = out[:usable]
    peak = np.max(np.abs(buf))
    if peak > 1e-9:
        buf *= spec.peak / peak
    return buf.astype(np.float32)


def synthesize_item(
    entry: CorpusEntry, seed: int, spec: SynthesisSpec | None = None
) -> np.ndarray:
    """Waveform for a corpus entry; stress falls on the root's first vowel."""
    spec = spec or SynthesisSpec()
    for seg in entry.surface_segments:
        if seg.acoustics is None:
            raise SynthesisError(f"{entry.entry_id}: segment {seg.symbol} lacks acoustics")
    root_start = 0
    if entry.prefixed:
        root_start = 2 if entry.prefix_shape == "VN" else 1
    stressed = root_start + 1
    return synthesize_segments(entry.surface_segments, stressed, seed, spec)


def synthesize_corpus(
    entries: list[CorpusEntry], base_seed: int, spec: SynthesisSpec | None = None
) -> None:
    """Fill entry.waveform for each entry; per-entry seeds derive from base_seed."""
    spec = spec or SynthesisSpec()
    for i, e in enumerate(entries):
        e.waveform = synthesize_item(e, base_seed + i, spec)
        e.sample_rate = spec.sample_rate
