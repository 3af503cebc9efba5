"""End-to-end pipeline behavior at micro scale, service contract, CLI.

A single micro run (about a minute of training) is shared module-wide; the
desk-scale scientific criteria live in the acceptance suite.
"""

import base64
import json
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from latentphon.corpus import build_corpus
from latentphon.pipeline import ExperimentConfig, Pipeline, conformity_analysis
from latentphon.pipeline.service import build_app
from latentphon.records import AnnotationRecord


@pytest.fixture(scope="module")
def micro_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("micro")
    cfg = ExperimentConfig.micro(out, seed=3)
    pipe = Pipeline(cfg)
    manifest = pipe.run(progress=False)
    return cfg, pipe, manifest


class TestPipeline:
    def test_all_stages_complete(self, micro_run):
        cfg, pipe, manifest = micro_run
        assert set(manifest["stages"]) == {
            "corpus", "train", "generate", "annotate", "probe",
            "sweep", "progression", "stats", "report",
        }

    def test_artifacts_hash_clean(self, micro_run):
        _, pipe, _ = micro_run
        assert pipe.verify_artifacts() == []

    def test_rerun_is_noop(self, micro_run):
        cfg, _, _ = micro_run
        pipe2 = Pipeline(cfg)
        m = pipe2.run(progress=False)
        assert m["last_run_executed"] == []

    def test_config_change_invalidates_downstream(self, micro_run, tmp_path):
        cfg, _, _ = micro_run
        cfg2 = ExperimentConfig(**json.loads(cfg.to_json()))
        cfg2.generation_count = cfg.generation_count + 2
        pipe = Pipeline(cfg2)
        m = pipe.run(progress=False)
        assert "generate" in m["last_run_executed"]
        assert "corpus" not in m["last_run_executed"]
        assert "train" not in m["last_run_executed"]

    def test_report_files_exist(self, micro_run):
        cfg, _, _ = micro_run
        out = Path(cfg.out_dir)
        assert (out / "report.json").exists()
        assert (out / "report.md").exists()
        rep = json.loads((out / "report.json").read_text())
        assert "reference_published" in rep and "measured" in rep
        # published constants shown beside local results, labeled apart
        assert rep["reference_published"]["harmony_glm"]["intercept"] == 1.34

    def test_corrupted_artifact_triggers_rerun(self, micro_run):
        cfg, _, _ = micro_run
        out = Path(cfg.out_dir)
        target = out / "probe.json"
        target.write_text('{"corrupted": true}')
        pipe = Pipeline(ExperimentConfig(**json.loads(cfg.to_json())))
        m = pipe.run(progress=False)
        assert "probe" in m["last_run_executed"]
        assert pipe.verify_artifacts() == []


class TestConformity:
    def test_corpus_self_check(self):
        entries = build_corpus()
        tuples = {e.gold.label_tuple() for e in entries}
        res = conformity_analysis([e.gold for e in entries], tuples)
        assert res["analyzable_rate"] == 1.0
        assert res["conformity_rate"] == 1.0
        assert res["novelty_rate"] == 0.0

    def test_all_zero_batch(self):
        recs = [AnnotationRecord() for _ in range(5)]
        res = conformity_analysis(recs, set())
        assert res["analyzable_rate"] == 0.0

    def test_voiced_obstruent_after_prefix_violates(self):
        rec = AnnotationRecord(
            analyzable=True, prefixed=True, prefix_shape="V",
            prefix_vowel_front=True, v2_front=True,
            c1_voiced=True, c1_manner="stop",
        )
        rec.finalize_harmony()
        res = conformity_analysis([rec], set())
        assert res["conformity_rate"] == 0.0
        assert res["novelty_rate"] == 1.0

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            conformity_analysis([], set())


class TestService:
    @pytest.fixture()
    def client(self, micro_run):
        cfg, _, _ = micro_run
        return TestClient(build_app(cfg.out_dir))

    def test_health_and_checkpoints(self, client):
        assert client.get("/health").json()["ok"]
        cks = client.get("/checkpoints").json()
        assert [c["step"] for c in cks] == [10, 20, 30]

    def test_generate_deterministic(self, client):
        req = {"seed": 7, "overrides": {"3": -4.5}}
        a = client.post("/generate", json=req).json()
        b = client.post("/generate", json=req).json()
        assert a["audio_wav_base64"] == b["audio_wav_base64"]
        assert a["z"][3] == -4.5
        assert "annotation" in a and "spectrogram" in a
        wav = base64.b64decode(a["audio_wav_base64"])
        assert wav[:4] == b"RIFF"
        assert len(a["spectrogram"]["freqs"]) > 10

    def test_full_vector_accepted(self, client, micro_run):
        cfg, _, _ = micro_run
        dim = cfg.net_config().latent_dim
        z = [0.0] * dim
        res = client.post("/generate", json={"z": z})
        assert res.status_code == 200

    def test_wrong_length_rejected(self, client):
        res = client.post("/generate", json={"z": [0.0] * 99})
        assert res.status_code == 422

    def test_nonfinite_override_rejected(self, client):
        # strict JSON cannot carry Infinity, but python-style lenient bodies can
        res = client.post(
            "/generate",
            content='{"overrides": {"0": Infinity}}',
            headers={"content-type": "application/json"},
        )
        assert res.status_code in (400, 422)

    def test_unknown_checkpoint_404(self, client):
        res = client.post("/generate", json={"step": 99999})
        assert res.status_code == 404

    def test_probes_endpoint(self, client):
        res = client.get("/probes")
        assert res.status_code == 200
        assert "responses" in res.json()

    def test_explorer_ui_mounted_when_built(self, client):
        from latentphon.pipeline.service import _frontend_root

        if _frontend_root() is None:
            pytest.skip("frontend not built")
        res = client.get("/ui/")
        assert res.status_code == 200
        assert b"latent-space explorer" in res.content


class TestCli:
    def test_show_config(self, capsys):
        from latentphon.pipeline.cli import main

        assert main(["show-config", "--preset", "micro", "--out", "/tmp/x"]) == 0
        out = capsys.readouterr().out
        assert json.loads(out)["train_steps"] == 30

    def test_stage_command_runs(self, micro_run, capsys):
        from latentphon.pipeline.cli import main

        cfg, _, _ = micro_run
        cfg_path = Path(cfg.out_dir) / "config.json"
        cfg.save(cfg_path)
        assert main(["synth-corpus", "--config", str(cfg_path), "--quiet"]) == 0
