"""The whole laboratory end to end at the minutes-scale micro preset.

Run:  python3 demos/05_full_experiment.py
(The scientifically meaningful run is the desk preset:
    latentphon run-all --preset desk --out runs/desk
 which trains for real; see README for what it produces.)
"""

import json
from pathlib import Path

from latentphon.pipeline import ExperimentConfig, Pipeline

out = Path("runs/demos/micro")
cfg = ExperimentConfig.micro(out, seed=1)
pipe = Pipeline(cfg)
manifest = pipe.run(progress=True)
print("\nstages executed:", manifest["last_run_executed"] or "none (cached)")
print("artifact verification:", pipe.verify_artifacts() or "clean")

report = json.loads((out / "report.json").read_text())
meas = report["measured"]
print("\nmeasured at micro scale (30 training steps; numbers are structural,")
print("not scientific - the model barely trains):")
print("  conformity:", meas["conformity"])
print("  progression diffs:", meas["progression_diffs"])
print("\nthe same report shows the published reference values, labeled apart:")
print("  reference harmony GLM:", report["reference_published"]["harmony_glm"])
print(f"\nfull bundle: {out}/report.md, report.json, report/*.png")
