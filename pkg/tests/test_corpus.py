import json

import pytest

from latentphon import corpus, lexicon
from latentphon.grammar import LOCAL_PROCESSES


@pytest.fixture(scope="module")
def entries():
    return corpus.build_corpus()


class TestCounts:
    def test_total_entries(self, entries):
        assert len(entries) == 270

    def test_pair_and_bare_counts(self, entries):
        stats = corpus.verify_corpus(entries)
        assert stats["pairs"] == 117
        assert stats["bare_only"] == 36
        assert stats["harmony_bearing"] == 234

    def test_sixteen_pairs_per_local_process(self, entries):
        stats = corpus.verify_corpus(entries)
        assert set(stats["pairs_per_process"]) == set(LOCAL_PROCESSES)
        assert all(n == 16 for n in stats["pairs_per_process"].values())

    def test_pooled_local_evidence(self, entries):
        # 64 pairs / 128 items carry local-process evidence
        local_items = [e for e in entries if e.process_group]
        assert len(local_items) == 128
        assert len({e.pair_id for e in local_items}) == 64

    def test_empty_tables_empty_corpus(self):
        assert corpus.build_corpus(pair_blocks=[], bare_only=[]) == []


class TestRuleSoundness:
    def test_checker_passes_all_prefixed(self, entries):
        stats = corpus.verify_corpus(entries)
        assert stats["prefixed_checked"] == 117

    def test_gold_harmony_always_true(self, entries):
        for e in entries:
            if e.prefixed:
                assert e.gold.harmonious is True

    def test_corrupted_table_fails_build(self):
        # flip one prefixed form to a disharmonious prefix
        rows = [list(r) for r in lexicon.VN_SONORANT]
        rows[1][3] = "On-linO"
        bad_blocks = [(rows, "VN", None)]
        with pytest.raises(corpus.CorpusError):
            corpus.build_corpus(pair_blocks=bad_blocks, bare_only=[])


class TestManifest:
    def test_roundtrip(self, tmp_path, entries):
        sub = entries[:6]
        for e in sub:
            import numpy as np

            e.waveform = np.zeros(64, dtype=np.float32)
            e.sample_rate = 16000
        path = corpus.write_corpus(sub, tmp_path)
        rows = corpus.read_manifest(path)
        assert len(rows) == 6
        assert rows[0]["entry_id"] == sub[0].entry_id
        assert rows[0]["gold"].prefixed == sub[0].gold.prefixed
        gold = json.loads(rows[1]["gold_json"])
        assert gold["prefix_shape"] == sub[1].gold.prefix_shape
