import numpy as np
import pytest

from latentphon import corpus, segments, synth
from latentphon.annotate import measure_formants


@pytest.fixture(scope="module")
def entries():
    return corpus.build_corpus()


class TestContracts:
    def test_deterministic(self, entries):
        e = entries[117]
        a = synth.synthesize_item(e, seed=7)
        b = synth.synthesize_item(e, seed=7)
        assert np.array_equal(a, b)

    def test_seed_changes_output(self, entries):
        e = entries[117]
        a = synth.synthesize_item(e, seed=7)
        b = synth.synthesize_item(e, seed=8)
        assert not np.array_equal(a, b)

    def test_length_and_range(self, entries):
        w = synth.synthesize_item(entries[0], seed=1)
        assert w.shape == (16384,)
        assert np.max(np.abs(w)) <= 1.0

    def test_silence_only(self):
        w = synth.synthesize_segments((), 0, seed=0)
        assert w.shape == (16384,)
        assert np.all(w == 0)

    def test_leading_silence_pad(self, entries):
        w = synth.synthesize_item(entries[3], seed=2)
        lead = int(0.025 * 16000)
        assert np.all(w[:lead] == 0)

    def test_desk_preset(self, entries):
        spec = synth.SynthesisSpec.desk()
        w = synth.synthesize_item(entries[3], seed=2, spec=spec)
        assert w.shape == (4096,)

    def test_missing_acoustics_error(self, entries):
        import dataclasses

        e = entries[0]
        broken = dataclasses.replace(e.surface_segments[0], acoustics=None)
        bad = corpus.CorpusEntry(
            entry_id="xxx",
            pair_id=None,
            orthography="x",
            item=e.item,
            prefixed=False,
            prefix_shape="none",
            process_group=None,
            surface_segments=(broken,) + e.surface_segments[1:],
            gold=e.gold,
        )
        with pytest.raises(synth.SynthesisError):
            synth.synthesize_item(bad, seed=0)


class TestFormantTargets:
    # synthesize-and-recover oracle: LPC estimates within +/-75 Hz of targets
    @pytest.mark.parametrize("sym", ["i", "E", "A", "O", "u", "@"])
    def test_recover_vowel_formants(self, sym):
        target = segments.get(sym).acoustics.formant_targets
        w = synth.synthesize_segments((segments.get(sym),), 0, seed=3)
        x = np.flatnonzero(np.abs(w) > 1e-6)
        span = (int(x[0] + 0.2 * len(x)), int(x[0] + 0.8 * len(x)))
        m = measure_formants(w, span, 16000)
        assert abs(m.f1_hz - target[0]) <= 75
        assert abs(m.f2_hz - target[1]) <= 75

    def test_front_back_separation(self):
        # the synthesis contract the annotator relies on
        for sym in ("i", "E"):
            assert segments.get(sym).acoustics.formant_targets[1] >= 1800
        for sym in ("A", "O", "u"):
            assert segments.get(sym).acoustics.formant_targets[1] <= 1300

    def test_vot_contract(self):
        for sym in ("ph", "th"):
            assert segments.get(sym).acoustics.vot_ms >= 50
        for sym in ("b", "d", "p", "t"):
            assert segments.get(sym).acoustics.vot_ms <= 20
