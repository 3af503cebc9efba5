"""Walk through the training corpus: grammar, counts, and synthesized audio.

Run:  python3 demos/01_corpus_and_audio.py
Writes a few WAVs and spectrogram PNGs under runs/demos/corpus/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from latentphon import corpus, synth
from latentphon.annotate import compute_spectrogram
from latentphon.audio import write_wav

out = Path("runs/demos/corpus")
out.mkdir(parents=True, exist_ok=True)

# ---- the grammar in action ---------------------------------------------------
entries = corpus.build_corpus()
stats = corpus.verify_corpus(entries)
print("corpus:", stats)

by = {e.orthography: e for e in entries}
for bare, pref in [("balu", "ompalu"), ("vira", "empira"), ("bora", "ofora"), ("lino", "enlino")]:
    print(f"  {bare:6s} {by[bare].ipa():12s} ->  {pref:8s} {by[pref].ipa()}")

# every prefixed form passed the independent rule checker during the build;
# harmony, the local consonant process, and nasal assimilation all hold.

# ---- listen to a pair ----------------------------------------------------------
spec = synth.SynthesisSpec()  # 16 kHz, ~1 s window
for orth in ("balu", "ompalu"):
    e = by[orth]
    wave = synth.synthesize_item(e, seed=42, spec=spec)
    write_wav(out / f"{orth}.wav", wave, spec.sample_rate)
    grid = compute_spectrogram(wave, spec.sample_rate, window_ms=5, max_hz=4000)
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.pcolormesh(grid.times, grid.freqs, 20 * np.log10(grid.values + 1e-6),
                  shading="auto", cmap="magma")
    ax.set_title(f"{orth}  [{e.ipa()}]")
    ax.set_xlabel("s")
    ax.set_ylabel("Hz")
    fig.tight_layout()
    fig.savefig(out / f"{orth}.png", dpi=120)
    plt.close(fig)
    print(f"  wrote {out / (orth + '.wav')} and spectrogram")

print("\nthe bare form keeps its voiced stop; the prefixed form surfaces with")
print("a harmonising O- prefix, assimilated nasal, and an aspirated stop.")
