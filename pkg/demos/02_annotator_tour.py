"""How the annotator reads a waveform: landmarks, formants, voicing, labels.

Run:  python3 demos/02_annotator_tour.py
"""

import numpy as np

from latentphon import corpus, synth
from latentphon.annotate import (
    annotate,
    detect_voicing,
    measure_formants,
    segment_landmarks,
)

entries = corpus.build_corpus()
by = {e.orthography: e for e in entries}
spec = synth.SynthesisSpec()
fs = spec.sample_rate

# ---- landmarks -----------------------------------------------------------------
wave = synth.synthesize_item(by["opulo"], seed=7, spec=spec)
print("landmark intervals for 'opulo' [OˈpʰulO]:")
for iv in segment_landmarks(wave, fs):
    print(f"  {iv.label:10s} {str(iv.sub):12s} {iv.start/fs:6.3f}-{iv.end/fs:6.3f} s")

# ---- formants drive the frontness calls ------------------------------------------
vowels = [iv for iv in segment_landmarks(wave, fs) if iv.sub == "vowel"]
for iv in vowels:
    m = measure_formants(wave, (iv.start, iv.end), fs)
    cls = "front" if m.f2_hz > 1550 else "back"
    print(f"  vowel at {iv.start/fs:.2f}s: F1={m.f1_hz:.0f} F2={m.f2_hz:.0f} -> {cls}")

# ---- voicing: the cue that separates [z] from [s] --------------------------------
for orth in ("zulo", "sanu"):
    w = synth.synthesize_item(by[orth], seed=9, spec=spec)
    fric = next(iv for iv in segment_landmarks(w, fs) if iv.label == "frication")
    voiced, score = detect_voicing(w, (fric.start, fric.end), fs)
    print(f"  {orth}: frication voiced={voiced} (periodicity {score:.2f})")

# ---- full record ------------------------------------------------------------------
rec = annotate(synth.synthesize_item(by["enlino"], seed=3, spec=spec), fs)
print("\nannotate('enlino') ->")
for k, v in rec.to_dict().items():
    if k != "confidence":
        print(f"  {k}: {v}")

# ---- gold agreement over the whole corpus ------------------------------------------
ok = 0
for i, e in enumerate(entries):
    w = synth.synthesize_item(e, seed=5000 + i, spec=spec)
    ok += annotate(w, fs).matches_gold(e.gold)
print(f"\ngold-label agreement: {ok}/270 ({ok/270:.1%})")
