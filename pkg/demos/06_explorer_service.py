"""Drive the generation service the way the browser explorer does.

Run:  python3 demos/06_explorer_service.py
Uses the micro run from demo 05 (creating it if needed) and an in-process
test client; `latentphon serve --out runs/demos/micro` exposes the same
endpoints over real HTTP for the frontend in frontend/.
"""

import base64
import json
from pathlib import Path

from fastapi.testclient import TestClient

from latentphon.pipeline import ExperimentConfig, Pipeline
from latentphon.pipeline.service import build_app

out = Path("runs/demos/micro")
if not (out / "report.json").exists():
    Pipeline(ExperimentConfig.micro(out, seed=1)).run(progress=False)

client = TestClient(build_app(out))

print("GET /checkpoints ->", client.get("/checkpoints").json())

probes = client.get("/probes").json()
prefix = probes["responses"]["prefix"]
print("probe rankings (prefix):",
      {k: prefix.get(k) for k in ("top_variable", "drop_ratio", "skipped")})

req = {"seed": 7, "overrides": {"3": -4.5}}
res = client.post("/generate", json=req).json()
print(f"POST /generate {req} ->")
print("  annotation:", {k: v for k, v in res["annotation"].items() if k != "confidence"})
wav = base64.b64decode(res["audio_wav_base64"])
print(f"  audio: {len(wav)} WAV bytes at {res['sample_rate']} Hz")
print(f"  spectrogram grid: {len(res['spectrogram']['freqs'])} freqs x "
      f"{len(res['spectrogram']['times'])} frames")
print("  identical request returns byte-identical audio:",
      client.post("/generate", json=req).json()["audio_wav_base64"] == res["audio_wav_base64"])
