"""Staged experiment pipeline with content-hash resumability.

Stages run in a fixed order (corpus, train, generate, annotate, probe,
sweep, progression, stats, report); each records a hash of its inputs plus
hashes of every artifact it wrote into run_manifest.json. A stage reruns
only when its input hash changed or an artifact is missing/corrupt.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from pathlib import Path

import numpy as np

from .. import corpus as corpus_mod
from .. import synth
from ..annotate import Annotator, compute_spectrogram
from ..gan import generate_batch, load_checkpoint, sample_latent, train
from ..gan.generate import read_generation_manifest
from ..gan.train import list_checkpoints
from ..probe import (
    fit_lasso_logistic,
    interpolate_sweep,
    progression_compare,
    rank_variables,
    set_and_generate,
)
from ..probe.manipulate import Trajectory, from_checkpoint
from ..records import AnnotationRecord
from ..stats import ContingencyTable, fisher_exact, fit_logistic_glm, fit_smooth_logistic
from ..stats.glm import cell_rows
from .config import ExperimentConfig
from .constants import REFERENCE

STAGES = [
    "corpus",
    "train",
    "generate",
    "annotate",
    "probe",
    "sweep",
    "progression",
    "stats",
    "report",
]


def _sha(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()[:16]


def _json_clean(obj):
    """Replace non-finite floats with None for strict-JSON persistence."""
    if isinstance(obj, dict):
        return {k: _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def _hash_obj(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


class StageFailed(RuntimeError):
    pass


def conformity_analysis(records: list[AnnotationRecord], corpus_tuples: set) -> dict:
    """Analyzability, phonotactic conformity, and novelty of a labeled batch.

    Conformity covers the constraints measurable from labels alone: prefixed
    forms keep obstruent onsets voiceless and carry a classifiable prefix
    vowel. Novelty is a label signature absent from the training corpus.
    """
    if not records:
        raise ValueError("empty batch")
    n = len(records)
    usable = [r for r in records if r.analyzable]
    conforming = []
    novel = []
    for r in usable:
        ok = True
        if r.prefixed and r.c1_manner in ("stop", "fricative") and r.c1_voiced:
            ok = False
        if r.prefixed and r.prefix_vowel_front is None:
            ok = False
        conforming.append(ok)
        novel.append(r.label_tuple() not in corpus_tuples)
    return {
        "n": n,
        "analyzable": len(usable),
        "analyzable_rate": len(usable) / n,
        "conformity_rate": float(np.mean(conforming)) if usable else 0.0,
        "novelty_rate": float(np.mean(novel)) if usable else 0.0,
        "novel_conforming_rate": (
            float(np.mean([c and v for c, v in zip(conforming, novel)])) if usable else 0.0
        ),
    }


class Pipeline:
    def __init__(self, config: ExperimentConfig):
        self.cfg = config
        self.out = Path(config.out_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.manifest_path = self.out / "run_manifest.json"
        self.manifest = (
            json.loads(self.manifest_path.read_text())
            if self.manifest_path.exists()
            else {"stages": {}}
        )
        self.manifest["config"] = json.loads(self.cfg.to_json())
        self._spec = config.synthesis_spec()
        self._annotator = Annotator(config.sample_rate)

    # --- manifest helpers ------------------------------------------------------

    def _save_manifest(self):
        self.manifest_path.write_text(json.dumps(self.manifest, indent=2, sort_keys=True))

    def _stage_done(self, name: str, input_hash: str) -> bool:
        rec = self.manifest["stages"].get(name)
        if not rec or rec["input_hash"] != input_hash:
            return False
        for rel, digest in rec["artifacts"].items():
            p = self.out / rel
            if not p.exists() or _sha(p) != digest:
                return False
        return True

    def _record_stage(self, name: str, input_hash: str, artifacts: list[Path], extra=None):
        rec = {
            "input_hash": input_hash,
            "completed_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "artifacts": {str(p.relative_to(self.out)): _sha(p) for p in artifacts},
        }
        if extra:
            rec["summary"] = extra
        self.manifest["stages"][name] = rec
        self._save_manifest()

    def _artifact_list(self, name: str) -> list[Path]:
        return [self.out / rel for rel in self.manifest["stages"][name]["artifacts"]]

    def verify_artifacts(self) -> list[str]:
        """Return mismatched/missing artifacts across all completed stages."""
        bad = []
        for name, rec in self.manifest["stages"].items():
            for rel, digest in rec["artifacts"].items():
                p = self.out / rel
                if not p.exists():
                    bad.append(f"{name}: missing {rel}")
                elif _sha(p) != digest:
                    bad.append(f"{name}: hash mismatch {rel}")
        return bad

    # --- stage execution -------------------------------------------------------

    def run(self, upto: str = "report", progress: bool = False) -> dict:
        if upto not in STAGES:
            raise ValueError(f"unknown stage {upto!r}")
        executed = []
        for name in STAGES[: STAGES.index(upto) + 1]:
            ran = getattr(self, f"_stage_{name}")(progress=progress)
            if ran:
                executed.append(name)
        self.manifest["last_run_executed"] = executed
        self._save_manifest()
        return self.manifest

    # corpus ---------------------------------------------------------------

    def _corpus_hash(self):
        return _hash_obj(
            {
                "synth": dataclasses.asdict(self._spec),
                "seed": self.cfg.seed,
            }
        )

    def _stage_corpus(self, progress=False) -> bool:
        h = self._corpus_hash()
        if self._stage_done("corpus", h):
            return False
        entries = corpus_mod.build_corpus()
        synth.synthesize_corpus(entries, base_seed=self.cfg.seed * 1000 + 1, spec=self._spec)
        cdir = self.out / "corpus"
        manifest = corpus_mod.write_corpus(entries, cdir)
        stats = corpus_mod.verify_corpus(entries)
        arts = [manifest] + sorted((cdir / "wav").glob("*.wav"))
        self._record_stage("corpus", h, arts, extra=stats)
        return True

    def _load_corpus(self):
        return corpus_mod.read_manifest(self.out / "corpus" / "manifest.csv")

    # train ----------------------------------------------------------------

    def _train_hash(self):
        return _hash_obj(
            {
                "corpus": self.manifest["stages"]["corpus"]["input_hash"],
                "net": dataclasses.asdict(self.cfg.net_config()),
                "steps": self.cfg.train_steps,
                "ckpts": self.cfg.checkpoint_steps,
                "threads": self.cfg.threads,
            }
        )

    def _stage_train(self, progress=False) -> bool:
        h = self._train_hash()
        if self._stage_done("train", h):
            return False
        from ..audio import read_wav

        rows = self._load_corpus()
        waves = np.stack(
            [read_wav(self.out / "corpus" / r["wav_path"])[0] for r in rows]
        ).astype(np.float32)
        ckdir = self.out / "checkpoints"
        for old in list_checkpoints(ckdir):
            old.unlink()
        paths = train(
            waves,
            self.cfg.net_config(),
            ckdir,
            total_steps=self.cfg.train_steps,
            checkpoint_steps=self.cfg.checkpoint_steps,
            log_path=self.out / "training_log.jsonl",
            num_threads=self.cfg.threads,
            progress=progress,
        )
        self._record_stage("train", h, paths + [self.out / "training_log.jsonl"])
        return True

    def _final_checkpoint(self):
        return load_checkpoint(list_checkpoints(self.out / "checkpoints")[-1])

    # generate -------------------------------------------------------------

    def _stage_generate(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "train": self.manifest["stages"]["train"]["input_hash"],
                "count": self.cfg.generation_count,
                "seed": self.cfg.seed,
            }
        )
        if self._stage_done("generate", h):
            return False
        ckpt = self._final_checkpoint()
        zs = sample_latent(
            self.cfg.generation_count, dim=ckpt.config.latent_dim, seed=self.cfg.seed * 1000 + 2
        )
        gdir = self.out / "generated"
        rows = generate_batch(ckpt, zs, gdir, sample_rate=self.cfg.sample_rate)
        arts = [gdir / "manifest.jsonl"] + [gdir / r["wav"] for r in rows if "error" not in r]
        self._record_stage("generate", h, arts, extra={"count": len(rows)})
        return True

    # annotate ---------------------------------------------------------------

    def _stage_annotate(self, progress=False) -> bool:
        h = _hash_obj({"generate": self.manifest["stages"]["generate"]["input_hash"]})
        if self._stage_done("annotate", h):
            return False
        from ..audio import read_wav

        gdir = self.out / "generated"
        rows = read_generation_manifest(gdir)
        out = self.out / "annotations.jsonl"
        n_analyzable = 0
        with open(out, "w") as fh:
            for r in rows:
                wav, fs = read_wav(gdir / r["wav"])
                rec = self._annotator.annotate(wav)
                n_analyzable += rec.analyzable
                fh.write(json.dumps({"id": r["id"], "record": rec.to_dict()}) + "\n")
        self._record_stage(
            "annotate", h, [out], extra={"n": len(rows), "analyzable": n_analyzable}
        )
        return True

    def _load_annotations(self) -> list[AnnotationRecord]:
        rows = [
            json.loads(l)
            for l in (self.out / "annotations.jsonl").read_text().splitlines()
        ]
        return [AnnotationRecord.from_dict(r["record"]) for r in rows]

    # probe ------------------------------------------------------------------

    def _stage_probe(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "annotate": self.manifest["stages"]["annotate"]["input_hash"],
                "extrapolation": [self.cfg.extrapolation_value, self.cfg.extrapolation_n],
            }
        )
        if self._stage_done("probe", h):
            return False
        ckpt = self._final_checkpoint()
        zs = np.array([r["z"] for r in read_generation_manifest(self.out / "generated")])
        recs = self._load_annotations()
        result: dict = {"responses": {}, "extrapolation": {}}

        def label_sets():
            yield "prefix", [r.prefixed if r.analyzable else None for r in recs]
            yield "front_v2", [
                (r.v2_front if (r.analyzable and r.v2_front is not None) else None)
                for r in recs
            ]
            yield "back_v2", [
                (not r.v2_front if (r.analyzable and r.v2_front is not None) else None)
                for r in recs
            ]

        for name, labels in label_sets():
            mask = np.array([l is not None for l in labels])
            y = np.array([1.0 if l else 0.0 for l, m in zip(labels, mask) if m])
            X = zs[mask]
            entry: dict = {"n": int(mask.sum())}
            if mask.sum() >= 20 and len(np.unique(y)) == 2:
                fit = fit_lasso_logistic(
                    X, y, folds=min(10, int(mask.sum()) // 4),
                    response=name, seed=self.cfg.seed,
                )
                rep = rank_variables(fit)
                entry.update(
                    {
                        "selected_lambda": fit.selected_lambda,
                        "kkt_max": float(np.max(fit.kkt_residuals)),
                        "coefficients": fit.coefficients.tolist(),
                        "intercept": fit.intercept,
                        "ranking": rep.order.tolist() if len(rep.order) else [],
                        "sorted_magnitudes": rep.sorted_magnitudes.tolist(),
                        "drop_ratio": rep.drop_ratio,
                        "drop_position": rep.drop_position,
                        "top_set": rep.top_set,
                        "significant_drop": rep.significant,
                        "top_variable": rep.top_set[0] if rep.top_set else None,
                        "direction": (
                            float(np.sign(fit.coefficients[rep.top_set[0]]))
                            if rep.top_set
                            else 0.0
                        ),
                    }
                )
            else:
                entry["skipped"] = "not enough labeled rows or single class"
            result["responses"][name] = entry

        prefix_entry = result["responses"]["prefix"]
        target = prefix_entry.get("top_variable")
        if target is None:
            target = 0
            result["extrapolation"]["note"] = "no identified prefix variable; probing index 0"
        gen_fn = from_checkpoint(ckpt)
        for value in (-self.cfg.extrapolation_value, self.cfg.extrapolation_value):
            res = set_and_generate(
                gen_fn,
                self._annotator.annotate,
                target_index=int(target),
                value=value,
                n=self.cfg.extrapolation_n,
                latent_dim=ckpt.config.latent_dim,
                seed=self.cfg.seed * 1000 + 3,
            )
            result["extrapolation"][f"{value:+g}"] = {
                "rate": res.rate,
                "analyzable": res.analyzable,
                "positives": res.positives,
                "ci": [res.ci_low, res.ci_high],
                "unreliable": res.unreliable,
            }
        result["extrapolation"]["target_index"] = int(target)
        rates = [
            result["extrapolation"][f"{v:+g}"]["rate"]
            for v in (-self.cfg.extrapolation_value, self.cfg.extrapolation_value)
        ]
        if all(np.isfinite(r) for r in rates):
            result["extrapolation"]["rate_shift"] = abs(rates[0] - rates[1])

        out = self.out / "probe.json"
        out.write_text(json.dumps(_json_clean(result), indent=2))
        self._record_stage("probe", h, [out])
        return True

    def _probe_result(self) -> dict:
        return json.loads((self.out / "probe.json").read_text())

    # sweep --------------------------------------------------------------------

    def _stage_sweep(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "probe": self.manifest["stages"]["probe"]["input_hash"],
                "sets": self.cfg.sweep_sets,
                "values": self.cfg.sweep_values,
                "fixed": self.cfg.sweep_fixed_magnitude,
            }
        )
        if self._stage_done("sweep", h):
            return False
        probe = self._probe_result()
        ckpt = self._final_checkpoint()
        prefix_var = probe["extrapolation"]["target_index"]
        prefix_dir = probe["responses"]["prefix"].get("direction", 0.0) or -1.0
        front = probe["responses"]["front_v2"]
        front_var = front.get("top_variable")
        front_dir = front.get("direction", 0.0) or -1.0
        if front_var is None or int(front_var) == int(prefix_var):
            ranking = front.get("ranking") or []
            front_var = next(
                (int(v) for v in ranking if int(v) != int(prefix_var)),
                (int(prefix_var) + 1) % ckpt.config.latent_dim,
            )

        fixed_value = self.cfg.sweep_fixed_magnitude * (1.0 if prefix_dir > 0 else -1.0)
        trajs = interpolate_sweep(
            from_checkpoint(ckpt),
            self._annotator.annotate,
            swept_index=int(front_var),
            fixed={int(prefix_var): fixed_value},
            values=self.cfg.sweep_values,
            n_sets=self.cfg.sweep_sets,
            latent_dim=ckpt.config.latent_dim,
            seed=self.cfg.seed * 1000 + 4,
        )
        out = self.out / "sweep.json"
        payload = {
            "swept_index": int(front_var),
            "front_direction": front_dir,
            "fixed": {str(int(prefix_var)): fixed_value},
            "trajectories": [t.to_dict() for t in trajs],
        }
        out.write_text(json.dumps(payload, indent=2))
        n_pref = sum(1 for t in trajs for r in t.records if r.analyzable and r.prefixed)
        total = sum(len(t.records) for t in trajs)
        self._record_stage(
            "sweep", h, [out], extra={"outputs": total, "prefixed": n_pref}
        )
        return True

    def _load_sweep(self) -> tuple[dict, list[Trajectory]]:
        payload = json.loads((self.out / "sweep.json").read_text())
        return payload, [Trajectory.from_dict(d) for d in payload["trajectories"]]

    # progression ----------------------------------------------------------------

    def _stage_progression(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "train": self.manifest["stages"]["train"]["input_hash"],
                "count": self.cfg.progression_count,
                "seed": self.cfg.seed,
            }
        )
        if self._stage_done("progression", h):
            return False
        ckpts = [load_checkpoint(p) for p in list_checkpoints(self.out / "checkpoints")]
        z = sample_latent(
            self.cfg.progression_count,
            dim=ckpts[0].config.latent_dim,
            seed=self.cfg.seed * 1000 + 5,
        )
        grid, records, diffs = progression_compare(z, ckpts, self._annotator.annotate)
        out = self.out / "progression.json"
        out.write_text(
            json.dumps(
                {
                    "steps": [c.step for c in ckpts],
                    "n_z": int(z.shape[0]),
                    "records": [[r.to_dict() for r in row] for row in records],
                    "diffs": [dataclasses.asdict(d) for d in diffs],
                },
                indent=2,
            )
        )
        self._record_stage(
            "progression", h, [out], extra={"n_diffs": len(diffs)}
        )
        return True

    # stats ---------------------------------------------------------------------

    def _stage_stats(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "annotate": self.manifest["stages"]["annotate"]["input_hash"],
                "sweep": self.manifest["stages"]["sweep"]["input_hash"],
                "v": 2,
            }
        )
        if self._stage_done("stats", h):
            return False
        recs = self._load_annotations()
        corpus_rows = self._load_corpus()
        corpus_tuples = {r["gold"].label_tuple() for r in corpus_rows}
        result: dict = {}

        result["conformity"] = conformity_analysis(recs, corpus_tuples)

        # headline rates in the published report's shape
        analyzable = [r for r in recs if r.analyzable]
        prefixed = [r for r in analyzable if r.prefixed]
        harm_defined = [r for r in prefixed if r.harmonious is not None]
        result["rates"] = {
            "n": len(recs),
            "analyzable": len(analyzable),
            "prefixed": len(prefixed),
            "prefixed_rate": len(prefixed) / max(len(analyzable), 1),
            "harmonious": sum(r.harmonious for r in harm_defined),
            "harmonious_rate": (
                sum(r.harmonious for r in harm_defined) / max(len(harm_defined), 1)
            ),
        }

        # harmony table + GLM (Table 2 / Appendix Table 5 analogues)
        cells: dict = {}
        for r in recs:
            if not (r.analyzable and r.prefixed and r.harmonious is not None):
                continue
            key = (r.prefix_shape, "front" if r.v2_front else "back")
            s, f = cells.get(key, (0, 0))
            cells[key] = (s + r.harmonious, f + (not r.harmonious))
        result["harmony_counts"] = {f"{k[0]}|{k[1]}": list(v) for k, v in cells.items()}
        shapes = {k[0] for k in cells}
        fronts = {k[1] for k in cells}
        if len(shapes) == 2 and len(fronts) == 2 and sum(sum(v) for v in cells.values()) >= 20:
            y, factors, counts = cell_rows(
                {(fr, pr): cells[(pr, fr)] for (pr, fr) in cells},
                ("frontness", "prefix"),
            )
            try:
                import warnings as _w

                with _w.catch_warnings():
                    _w.simplefilter("ignore")
                    fit = fit_logistic_glm(y, factors, interaction=True, counts=counts)
                result["harmony_glm"] = {
                    "terms": fit.table(),
                    "separation_flagged": fit.separation_flagged,
                }
            except ValueError as exc:
                result["harmony_glm"] = {"skipped": str(exc)}
        else:
            result["harmony_glm"] = {"skipped": "incomplete factor design at this scale"}

        # local vs non-local error comparison (Fisher)
        loc_err = loc_n = 0
        for r in recs:
            if r.analyzable and r.prefixed and r.c1_manner in ("stop", "fricative"):
                loc_n += 1
                loc_err += bool(r.c1_voiced)
        har_err = har_n = 0
        for r in recs:
            if r.analyzable and r.prefixed and r.harmonious is not None:
                har_n += 1
                har_err += not r.harmonious
        result["local_errors"] = {"errors": loc_err, "n": loc_n}
        result["nonlocal_errors"] = {"errors": har_err, "n": har_n}
        if loc_n and har_n:
            table = ContingencyTable(
                har_err, har_n - har_err, loc_err, loc_n - loc_err,
                row_labels=("nonlocal", "local"), col_labels=("error", "ok"),
            )
            two = fisher_exact(table)
            one = fisher_exact(table, alternative="greater")
            result["locality_fisher"] = {
                "table": [har_err, har_n - har_err, loc_err, loc_n - loc_err],
                "odds_ratio": two.odds_ratio,
                "ci": [two.ci_low, two.ci_high],
                "p_two_sided": two.p_value,
                "p_one_sided_greater": one.p_value,
            }

        # sweep trend: frontness vs oriented swept value
        payload, trajs = self._load_sweep()
        front_dir = payload["front_direction"]
        values = sorted({v for t in trajs for v in t.values})
        pooled = []
        for v in values:
            labs = [
                r.v2_front
                for t in trajs
                for vv, r in zip(t.values, t.records)
                if vv == v and r.analyzable and r.v2_front is not None
            ]
            pooled.append((v, float(np.mean(labs)) if labs else np.nan, len(labs)))
        result["sweep_front_rates"] = [
            {"value": v, "front_rate": rate, "n": n} for v, rate, n in pooled
        ]
        ok = [(v, r) for v, r, n in pooled if np.isfinite(r)]
        if len(ok) >= 4:
            from scipy.stats import spearmanr

            axis = [-front_dir * v for v, _ in ok]
            rho, p = spearmanr(axis, [r for _, r in ok])
            result["sweep_spearman"] = {"rho": float(rho), "p": float(p), "orientation": -front_dir}
        n_pref = sum(1 for t in trajs for r in t.records if r.analyzable and r.prefixed)
        total = sum(len(t.records) for t in trajs)
        result["sweep_prefixed"] = {"prefixed": n_pref, "n": total, "rate": n_pref / max(total, 1)}

        # smooth fits over trajectories
        import warnings as _w

        for name, kwargs in (
            ("frontness", dict(response="frontness")),
            ("harmony", dict(response="harmonious", by_level_factor=True)),
        ):
            try:
                with _w.catch_warnings():
                    _w.simplefilter("ignore")
                    sf = fit_smooth_logistic(trajs, **kwargs)
                entry = {
                    "linear_slope": sf.linear_slope,
                    "linear_slope_se": sf.linear_slope_se,
                    "edf": sf.edf,
                    "smoothing_lambda": sf.smoothing_lambda,
                    "degenerate": sf.degenerate,
                    "terms": [
                        {"term": n2} | sf.term(n2) for n2 in sf.parametric_names
                    ],
                }
                if kwargs.get("by_level_factor"):
                    entry["level_logit_ci"] = {
                        str(lv): list(sf.level_logit_ci(lv)) for lv in (False, True)
                    }
                grid = np.linspace(min(values), max(values), 25)
                eta, lo, hi, prob = sf.fitted_curve(
                    grid, level=None if not kwargs.get("by_level_factor") else False
                )
                entry["curve"] = {
                    "values": grid.tolist(),
                    "logit": eta.tolist(),
                    "lo": lo.tolist(),
                    "hi": hi.tolist(),
                    "prob": prob.tolist(),
                }
                result[f"smooth_{name}"] = entry
            except ValueError as exc:
                result[f"smooth_{name}"] = {"skipped": str(exc)}

        out = self.out / "stats.json"
        out.write_text(json.dumps(_json_clean(result), indent=2))
        self._record_stage("stats", h, [out])
        return True

    # report ----------------------------------------------------------------------

    def _stage_report(self, progress=False) -> bool:
        h = _hash_obj(
            {
                "stats": self.manifest["stages"]["stats"]["input_hash"],
                "probe": self.manifest["stages"]["probe"]["input_hash"],
                "progression": self.manifest["stages"]["progression"]["input_hash"],
            }
        )
        if self._stage_done("report", h):
            return False
        from .report import build_report

        arts = build_report(self.out, self.cfg, REFERENCE)
        self._record_stage("report", h, arts)
        return True
