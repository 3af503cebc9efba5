"""Report bundle: JSON summary, markdown digest, plot data, and figures.

Every local measurement is shown beside the corresponding published
reference value, explicitly labeled; the two are never conflated.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ..audio import read_wav
from ..annotate import compute_spectrogram


def _load(out: Path, name: str) -> dict:
    p = out / name
    return json.loads(p.read_text()) if p.exists() else {}


def build_report(out: Path, cfg, reference: dict) -> list[Path]:
    out = Path(out)
    stats = _load(out, "stats.json")
    probe = _load(out, "probe.json")
    progression = _load(out, "progression.json")
    figdir = out / "report"
    figdir.mkdir(exist_ok=True)
    arts: list[Path] = []

    report = {
        "config": json.loads(cfg.to_json()),
        "reference_published": reference,
        "measured": {
            "conformity": stats.get("conformity"),
            "rates": stats.get("rates"),
            "harmony_counts": stats.get("harmony_counts"),
            "harmony_glm": stats.get("harmony_glm"),
            "locality": {
                "local": stats.get("local_errors"),
                "nonlocal": stats.get("nonlocal_errors"),
                "fisher": stats.get("locality_fisher"),
            },
            "probe": {
                name: {
                    k: entry.get(k)
                    for k in (
                        "top_variable",
                        "direction",
                        "drop_ratio",
                        "significant_drop",
                        "selected_lambda",
                        "kkt_max",
                        "n",
                        "skipped",
                    )
                }
                for name, entry in probe.get("responses", {}).items()
            },
            "extrapolation": probe.get("extrapolation"),
            "sweep_prefixed": stats.get("sweep_prefixed"),
            "sweep_spearman": stats.get("sweep_spearman"),
            "smooth_frontness": {
                k: stats.get("smooth_frontness", {}).get(k)
                for k in ("linear_slope", "linear_slope_se", "degenerate", "skipped")
            },
            "smooth_harmony": {
                k: stats.get("smooth_harmony", {}).get(k)
                for k in ("terms", "level_logit_ci", "degenerate", "skipped")
            },
            "progression_diffs": len(progression.get("diffs", [])),
        },
    }
    report_json = out / "report.json"
    report_json.write_text(json.dumps(report, indent=2, sort_keys=True))
    arts.append(report_json)

    # plot data mirrors of the sorted-coefficient figures
    plotdata = {}
    for name, entry in probe.get("responses", {}).items():
        if "sorted_magnitudes" in entry:
            plotdata[name] = {
                "sorted_magnitudes": entry["sorted_magnitudes"],
                "ranking": entry["ranking"],
            }
    pd_path = out / "report" / "coefficient_plot_data.json"
    pd_path.write_text(json.dumps(plotdata, indent=2))
    arts.append(pd_path)

    # figures -----------------------------------------------------------------
    if plotdata:
        fig, axes = plt.subplots(1, len(plotdata), figsize=(4 * len(plotdata), 3))
        axes = np.atleast_1d(axes)
        for ax, (name, pdta) in zip(axes, plotdata.items()):
            ax.plot(pdta["sorted_magnitudes"], marker="o", ms=2.5, lw=0.8)
            ax.set_title(f"|coefficients|, {name}")
            ax.set_xlabel("rank")
        fig.tight_layout()
        p = figdir / "coefficient_drop.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        arts.append(p)

    rates = stats.get("sweep_front_rates")
    if rates:
        vals = [r["value"] for r in rates]
        fr = [r["front_rate"] for r in rates]
        fig, ax = plt.subplots(figsize=(5, 3))
        ax.plot(vals, fr, marker="o")
        curve = stats.get("smooth_frontness", {}).get("curve")
        if curve:
            ax.plot(curve["values"], curve["prob"], lw=1, alpha=0.7)
        ax.set_xlabel("swept latent value")
        ax.set_ylabel("front-vowel rate")
        ax.set_ylim(-0.05, 1.05)
        fig.tight_layout()
        p = figdir / "sweep_front_rate.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        arts.append(p)

    # progression gallery: waveform + spectrogram per checkpoint for a few z
    steps = progression.get("steps", [])
    if steps:
        ck_paths = sorted((out / "checkpoints").glob("step*.pt"))
        from ..gan import load_checkpoint, generator_forward, sample_latent

        ckpts = [load_checkpoint(p) for p in ck_paths]
        z = sample_latent(3, dim=ckpts[0].config.latent_dim, seed=cfg.seed * 1000 + 5)
        fig, axes = plt.subplots(
            len(z), len(ckpts), figsize=(3 * len(ckpts), 2.2 * len(z)), squeeze=False
        )
        for col, ck in enumerate(ckpts):
            waves = generator_forward(ck, z)
            for row in range(len(z)):
                grid = compute_spectrogram(
                    waves[row], cfg.sample_rate, window_ms=5.0, max_hz=4000
                )
                axes[row][col].pcolormesh(
                    grid.times,
                    grid.freqs,
                    20 * np.log10(grid.values + 1e-6),
                    shading="auto",
                    cmap="magma",
                )
                if row == 0:
                    axes[row][col].set_title(f"step {ck.step}", fontsize=9)
                axes[row][col].set_xticks([])
                axes[row][col].set_yticks([])
        fig.tight_layout()
        p = figdir / "progression_gallery.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        arts.append(p)

    # markdown digest -----------------------------------------------------------
    m = report["measured"]
    ref = reference
    lines = [
        "# Run report",
        "",
        "Local desk-scale measurements next to published reference values",
        "(different audio and weights; references are context, not targets).",
        "",
        "| quantity | this run | published reference |",
        "|---|---|---|",
    ]

    def row(name, local, refv):
        lines.append(f"| {name} | {local} | {refv} |")

    conf = m.get("conformity") or {}
    rates = m.get("rates") or {}
    row("analyzable rate", f"{conf.get('analyzable_rate', float('nan')):.3f}", ref["analyzable_rate"])
    row("novel+conforming rate", f"{conf.get('novel_conforming_rate', float('nan')):.3f}", ref["novel_conforming_rate"])
    if rates:
        row("prefixed rate (of analyzable)", f"{rates.get('prefixed_rate', float('nan')):.3f}", ref["prefixed_rate"])
        row("harmonious rate (of prefixed)", f"{rates.get('harmonious_rate', float('nan')):.3f}", ref["harmonious_rate"])
    loc = m["locality"]
    if loc.get("fisher"):
        row(
            "local vs non-local OR",
            f"{loc['fisher']['odds_ratio']:.2f} {np.round(loc['fisher']['ci'],2).tolist()}",
            f"{ref['local_vs_nonlocal']['odds_ratio']} {ref['local_vs_nonlocal']['ci']}",
        )
    ext = m.get("extrapolation") or {}
    if "rate_shift" in ext:
        row("prefix rate shift at +/-extrapolation", f"{ext['rate_shift']:.2f}", "0.99")
    sw = m.get("sweep_prefixed") or {}
    if sw:
        row("sweep prefixed rate", f"{sw.get('rate', float('nan')):.3f}", ref["sweep_prefixed_rate"])
    sp = m.get("sweep_spearman") or {}
    if sp:
        row("sweep front-rate Spearman", f"{sp.get('rho', float('nan')):.3f} (p={sp.get('p', float('nan')):.2g})", "negative trend")
    md = out / "report.md"
    md.write_text("\n".join(lines) + "\n")
    arts.append(md)
    return arts
