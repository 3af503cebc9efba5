"""Corpus round-trip validation with acoustic diagnostics on mismatches."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import synth
from .annotate import annotate, segment_landmarks
from .corpus import CorpusEntry


@dataclass
class RoundTripFailure:
    entry_id: str
    surface: str
    mismatched_fields: dict
    confidences: dict
    intervals: list = field(default_factory=list)


def roundtrip_report(
    entries: list[CorpusEntry],
    spec: synth.SynthesisSpec | None = None,
    seed_base: int = 1000,
) -> tuple[int, list[RoundTripFailure]]:
    """annotate(synthesize(entry)) vs gold for every entry.

    Returns the number of agreements plus per-failure diagnostics: mismatched
    fields with both values, per-field confidences, and the landmark intervals
    of the offending waveform.
    """
    spec = spec or synth.SynthesisSpec()
    fields = [
        "analyzable",
        "prefixed",
        "prefix_shape",
        "prefix_vowel_front",
        "v2_front",
        "c1_voiced",
        "c1_manner",
        "harmonious",
    ]
    ok = 0
    failures: list[RoundTripFailure] = []
    for i, e in enumerate(entries):
        wave = synth.synthesize_item(e, seed=seed_base + i, spec=spec)
        rec = annotate(wave, spec.sample_rate)
        if rec.matches_gold(e.gold):
            ok += 1
            continue
        mism = {
            f: (getattr(rec, f), getattr(e.gold, f))
            for f in fields
            if getattr(rec, f) != getattr(e.gold, f)
        }
        ivs = [
            (iv.label, iv.sub, round(iv.start / spec.sample_rate, 3),
             round(iv.end / spec.sample_rate, 3))
            for iv in segment_landmarks(np.asarray(wave, dtype=np.float64), spec.sample_rate)
        ]
        failures.append(
            RoundTripFailure(
                entry_id=e.entry_id,
                surface=e.spelled(),
                mismatched_fields=mism,
                confidences=dict(rec.confidence),
                intervals=ivs,
            )
        )
    return ok, failures
