"""Command-line entry point.

Subcommands cover each pipeline stage (running prerequisites as needed via
the stage hashes), plus run-all and the HTTP service. Configuration comes
from --preset or a JSON --config file; LATENTPHON_OUT sets the default
output root.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ExperimentConfig, default_out_root
from .run import Pipeline, STAGES

_STAGE_OF = {
    "synth-corpus": "corpus",
    "train": "train",
    "generate": "generate",
    "annotate": "annotate",
    "probe": "probe",
    "sweep": "sweep",
    "progression": "progression",
    "stats": "stats",
    "report": "report",
    "run-all": "report",
}


def _load_config(args) -> ExperimentConfig:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
        if args.out:
            cfg.out_dir = args.out
    else:
        out = args.out or str(default_out_root() / args.preset)
        maker = {
            "desk": ExperimentConfig.desk,
            "micro": ExperimentConfig.micro,
            "paper-scale": ExperimentConfig.paper_scale,
        }[args.preset]
        cfg = maker(out, seed=args.seed)
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="latentphon",
        description="speech-GAN phonological rule laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument(
            "--preset",
            default="desk",
            choices=["desk", "micro", "paper-scale"],
            help="built-in configuration preset (default: desk)",
        )
        p.add_argument("--out", help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--quiet", action="store_true")

    for name in _STAGE_OF:
        p = sub.add_parser(name, help=f"run the pipeline through '{_STAGE_OF[name]}'")
        add_common(p)

    p = sub.add_parser("serve", help="start the JSON-over-HTTP generation service")
    add_common(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    p = sub.add_parser("show-config", help="print a preset's resolved configuration")
    add_common(p)

    args = parser.parse_args(argv)
    cfg = _load_config(args)

    if args.command == "show-config":
        print(cfg.to_json())
        return 0
    if args.command == "serve":
        from .service import serve

        serve(cfg.out_dir, host=args.host, port=args.port)
        return 0

    pipe = Pipeline(cfg)
    manifest = pipe.run(upto=_STAGE_OF[args.command], progress=not args.quiet)
    executed = manifest.get("last_run_executed", [])
    if not args.quiet:
        print(f"stages executed: {executed or 'none (all up to date)'}")
        print(f"outputs in {cfg.out_dir}")
    bad = pipe.verify_artifacts()
    if bad:
        print("artifact verification failed:", *bad, sep="\n  ", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
