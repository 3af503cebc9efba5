"""Interval parse -> phonological labels.

A waveform is read as either (C1 region)(V2)... or (prefix vowel)(nasal
murmur?)(C1 region)(V2)...; an utterance-initial vowel of at least 40 ms
followed by consonantal material is what counts as a prefix. Frontness is
F2 against 1550 Hz, C1 voicing is the periodicity of the obstruent interval,
and a record is analyzable only when every required call clears confidence
0.5.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..records import (
    AnnotationRecord,
    MANNER_FRICATIVE,
    MANNER_SONORANT,
    MANNER_STOP,
)
from .features import (
    AnnotationError,
    FRONTNESS_F2_HZ,
    detect_voicing,
    measure_formants,
)
from .landmarks import (
    Interval,
    LBL_BURST,
    LBL_CLOSURE,
    LBL_FRICATION,
    LBL_SILENCE,
    LBL_VOCALIC,
    SUB_BAR,
    SUB_MURMUR,
    SUB_VOWEL,
    Thresholds,
    segment_landmarks,
)

PV_MIN_S = 0.040
MURMUR_MIN_S = 0.018
VOWEL_MIN_S = 0.030


@dataclass
class Annotator:
    fs: int
    thresholds: Thresholds | None = None

    def annotate(self, waveform: np.ndarray) -> AnnotationRecord:
        return annotate(waveform, self.fs, self.thresholds)


def _frontness(waveform, iv: Interval, fs) -> tuple[bool | None, float]:
    try:
        m = measure_formants(waveform, (iv.start, iv.end), fs)
    except AnnotationError:
        return None, 0.0
    conf = min(abs(m.f2_hz - FRONTNESS_F2_HZ) / 400.0, 1.0)
    return m.f2_hz > FRONTNESS_F2_HZ, conf


def annotate(
    waveform: np.ndarray, fs: int, thresholds: Thresholds | None = None
) -> AnnotationRecord:
    rec = AnnotationRecord()
    x = np.asarray(waveform, dtype=np.float64)
    if x.size == 0 or float(np.max(np.abs(x))) < 1e-6:
        return rec  # degenerate: silence, analyzable False

    ivs = [iv for iv in segment_landmarks(x, fs, thresholds)]
    speech = [iv for iv in ivs if iv.label != LBL_SILENCE]
    # residual crossfade dips: sub-25 ms noise not released from a stop gap
    cleaned: list[Interval] = []
    for iv in speech:
        if (
            iv.label in (LBL_BURST, LBL_FRICATION)
            and iv.dur_s(fs) < 0.025
            and (
                not cleaned
                or cleaned[-1].label == LBL_VOCALIC
                and cleaned[-1].sub != SUB_BAR
            )
        ):
            continue
        cleaned.append(iv)
    speech = cleaned
    if not speech:
        return rec

    def is_vowel(iv: Interval) -> bool:
        return (
            iv.label == LBL_VOCALIC
            and iv.sub == SUB_VOWEL
            and iv.dur_s(fs) >= VOWEL_MIN_S
        )

    vowels = [iv for iv in speech if is_vowel(iv)]
    if not vowels:
        return rec

    # --- prefix parse ---------------------------------------------------------
    first = speech[0]
    pv: Interval | None = None
    murmur: Interval | None = None
    cursor = 0
    if is_vowel(first) and first.dur_s(fs) >= PV_MIN_S:
        pv = first
        cursor = speech.index(first) + 1
        if (
            cursor < len(speech)
            and speech[cursor].label == LBL_VOCALIC
            and speech[cursor].sub == SUB_MURMUR
            and speech[cursor].dur_s(fs) >= MURMUR_MIN_S
        ):
            murmur = speech[cursor]
            cursor += 1

    # --- C1 region up to the next vowel --------------------------------------
    c1_region: list[Interval] = []
    v2: Interval | None = None
    for iv in speech[cursor:]:
        if is_vowel(iv):
            v2 = iv
            break
        c1_region.append(iv)

    if pv is not None and (v2 is None or not c1_region):
        # an initial long vowel with nothing consonantal after it is not a
        # parseable prefixed form; fall back to unprefixed with low structure
        if v2 is None and len(vowels) == 1:
            rec.prefixed = False
            rec.confidence["prefixed"] = 0.4
            v2 = pv
            pv = None
        else:
            return rec
    if v2 is None:
        return rec

    if pv is not None:
        rec.prefixed = True
        rec.prefix_shape = "VN" if murmur is not None else "V"
        rec.confidence["prefixed"] = min(pv.dur_s(fs) / (2 * PV_MIN_S), 1.0)
        if murmur is not None:
            rec.confidence["prefix_shape"] = min(murmur.dur_s(fs) / 0.040, 1.0)
        else:
            rec.confidence["prefix_shape"] = 0.9
        front, conf = _frontness(x, pv, fs)
        rec.prefix_vowel_front = front
        rec.confidence["prefix_vowel_front"] = conf
    else:
        rec.prefixed = False
        rec.prefix_shape = "none"
        rec.confidence.setdefault("prefixed", 0.9 if c1_region else 0.6)

    front, conf = _frontness(x, v2, fs)
    rec.v2_front = front
    rec.confidence["v2_front"] = conf

    # --- C1 manner and voicing ------------------------------------------------
    fric = [iv for iv in c1_region if iv.label == LBL_FRICATION]
    burst = [iv for iv in c1_region if iv.label == LBL_BURST]
    closure = [iv for iv in c1_region if iv.label == LBL_CLOSURE]
    bar = [iv for iv in c1_region if iv.label == LBL_VOCALIC and iv.sub == SUB_BAR]
    murm_c1 = [iv for iv in c1_region if iv.label == LBL_VOCALIC and iv.sub == SUB_MURMUR]

    manner_conf = 0.9
    if fric and not closure and not burst:
        rec.c1_manner = MANNER_FRICATIVE
        span = (fric[0].start, fric[-1].end)
        trim = min(int(0.15 * (span[1] - span[0])), max(0, (span[1] - span[0] - int(0.020 * fs)) // 2))
        span = (span[0] + trim, span[1] - trim)
        try:
            voiced, score = detect_voicing(x, span, fs)
            rec.c1_voiced = voiced
            rec.confidence["c1_voiced"] = min(abs(score - 0.35) / 0.25, 1.0)
        except AnnotationError:
            rec.c1_voiced = None
            rec.confidence["c1_voiced"] = 0.0
        manner_conf = min(sum(iv.dur_s(fs) for iv in fric) / 0.040, 1.0)
    elif burst or closure or bar:
        rec.c1_manner = MANNER_STOP
        # voicing evidence must precede the release (prevoicing bar/murmur);
        # murmur-like material after a burst is just aspiration tail
        noise_starts = [iv.start for iv in fric + burst]
        first_noise = min(noise_starts) if noise_starts else None
        # a silent closure is itself voicelessness evidence: voiced stops keep
        # their voicing bar through the whole closure
        if closure:
            rec.c1_voiced = False
        else:
            prevoiced = [
                iv
                for iv in bar + murm_c1
                if (first_noise is None or iv.start < first_noise)
                and iv.dur_s(fs) >= 0.022
            ]
            rec.c1_voiced = bool(prevoiced)
        rec.confidence["c1_voiced"] = 0.9 if (closure or bar) else 0.75
        manner_conf = 0.9 if (closure or bar) else 0.75
    elif c1_region:
        rec.c1_manner = MANNER_SONORANT
        rec.c1_voiced = True
        rec.confidence["c1_voiced"] = 0.9
        manner_conf = min(sum(iv.dur_s(fs) for iv in c1_region) / 0.040, 1.0)
    else:
        # bare parse with no consonantal onset material at all
        rec.c1_manner = None
        rec.c1_voiced = None
        manner_conf = 0.0
    rec.confidence["c1_manner"] = manner_conf

    rec.finalize_harmony()

    required = ["prefixed", "v2_front", "c1_voiced", "c1_manner"]
    if rec.prefixed:
        required += ["prefix_shape", "prefix_vowel_front"]
    values_ok = rec.v2_front is not None and rec.c1_manner is not None
    if rec.prefixed:
        values_ok = values_ok and rec.prefix_vowel_front is not None
    rec.analyzable = values_ok and all(
        rec.confidence.get(k, 0.0) >= 0.5 for k in required
    )
    return rec
