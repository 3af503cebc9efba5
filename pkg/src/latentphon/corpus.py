"""Corpus construction: lexicon tables -> labeled entries -> manifest + WAVs."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import lexicon, segments
from .grammar import (
    LexicalItem,
    PREFIX_NONE,
    PREFIX_V,
    PREFIX_VN,
    check_surface_form,
    prefixed_surface,
)
from .records import (
    AnnotationRecord,
    MANNER_FRICATIVE,
    MANNER_SONORANT,
    MANNER_STOP,
)
from .segments import Segment


class CorpusError(ValueError):
    pass


@dataclass
class CorpusEntry:
    entry_id: str
    pair_id: str | None
    orthography: str
    item: LexicalItem
    prefixed: bool
    prefix_shape: str  # V | VN | none
    process_group: str | None
    surface_segments: tuple[Segment, ...]
    gold: AnnotationRecord
    waveform: np.ndarray | None = None
    sample_rate: int | None = None
    wav_path: str | None = None

    @property
    def harmony_class(self) -> str:
        return "front" if self.item.v2.front else "back"

    def spelled(self) -> str:
        return "".join(s.symbol for s in self.surface_segments)

    def ipa(self) -> str:
        root_start = 0
        if self.prefixed:
            root_start = 2 if self.prefix_shape == PREFIX_VN else 1
        parts = [segments.ipa(s.symbol) for s in self.surface_segments]
        return "".join(parts[:root_start]) + "ˈ" + "".join(parts[root_start:])


def _manner_of(seg: Segment) -> str:
    if seg.category == segments.STOP:
        return MANNER_STOP
    if seg.category == segments.FRICATIVE:
        return MANNER_FRICATIVE
    return MANNER_SONORANT


def gold_record(
    surface: tuple[Segment, ...], prefixed: bool, prefix_shape: str
) -> AnnotationRecord:
    """Reference labels straight from the symbolic surface form."""
    root_start = 0
    if prefixed:
        root_start = 2 if prefix_shape == PREFIX_VN else 1
    c1, v2 = surface[root_start], surface[root_start + 1]
    rec = AnnotationRecord(
        analyzable=True,
        prefixed=prefixed,
        prefix_shape=prefix_shape if prefixed else PREFIX_NONE,
        prefix_vowel_front=surface[0].front if prefixed else None,
        v2_front=v2.front,
        c1_voiced=bool(c1.voiced),
        c1_manner=_manner_of(c1),
        confidence={},
    )
    rec.confidence = {
        k: 1.0
        for k in ("prefixed", "prefix_shape", "prefix_vowel_front", "v2_front", "c1_voiced", "c1_manner")
        if getattr(rec, k) is not None
    }
    rec.finalize_harmony()
    return rec


def _parse_item(seg_string: str) -> LexicalItem:
    return LexicalItem(tuple(segments.tokenize(seg_string)), stress=1)


def build_corpus(
    pair_blocks=None, bare_only=None
) -> list[CorpusEntry]:
    """Compile the training corpus from the lexicon tables.

    With default arguments this emits the full 270 entries (117 bare/prefixed
    pairs + 36 bare-only items). Every prefixed surface form is re-verified by
    the independent rule checker; any violation aborts the build with the
    offending items listed.
    """
    if pair_blocks is None:
        pair_blocks = lexicon.PAIR_BLOCKS
    if bare_only is None:
        bare_only = lexicon.BARE_ONLY
    entries: list[CorpusEntry] = []
    problems: list[str] = []
    pair_num = 0

    def add(orth, surface, item, prefixed, shape, group, pair_id):
        eid = f"{len(entries):03d}-{orth}"
        gold = gold_record(surface, prefixed, shape)
        entries.append(
            CorpusEntry(
                entry_id=eid,
                pair_id=pair_id,
                orthography=orth,
                item=item,
                prefixed=prefixed,
                prefix_shape=shape if prefixed else PREFIX_NONE,
                process_group=group,
                surface_segments=surface,
                gold=gold,
            )
        )

    for rows, shape, group in pair_blocks:
        for sg_orth, sg_segs, pl_orth, pl_segs in rows:
            pair_id = f"pair{pair_num:03d}-{sg_orth}"
            pair_num += 1
            item = _parse_item(sg_segs)
            if item.spelled() != sg_segs:
                problems.append(f"{sg_orth}: bad bare transcription {sg_segs!r}")
                continue
            derived = prefixed_surface(item, shape, group)
            listed = tuple(segments.tokenize(pl_segs))
            if derived != listed:
                problems.append(
                    f"{pl_orth}: table form {pl_segs!r} differs from derived "
                    f"{'-'.join(s.symbol for s in derived)}"
                )
                continue
            violations = check_surface_form(listed, item, shape, group)
            if violations:
                problems.append(f"{pl_orth}: {'; '.join(violations)}")
                continue
            add(sg_orth, item.segments, item, False, PREFIX_NONE, group, pair_id)
            add(pl_orth, listed, item, True, shape, group, pair_id)

    for orth, segs, copies in bare_only:
        item = _parse_item(segs)
        for _ in range(copies):
            add(orth, item.segments, item, False, PREFIX_NONE, None, None)

    if problems:
        raise CorpusError("corpus build failed:\n  " + "\n  ".join(problems))
    return entries


def verify_corpus(entries: list[CorpusEntry]) -> dict:
    """Independent post-hoc check: recheck every prefixed form, recount blocks."""
    checked = 0
    for e in entries:
        if e.prefixed:
            bad = check_surface_form(
                e.surface_segments, e.item, e.prefix_shape, e.process_group
            )
            if bad:
                raise CorpusError(f"{e.entry_id}: {'; '.join(bad)}")
            checked += 1
    pair_ids = {e.pair_id for e in entries if e.pair_id}
    by_group: dict[str, int] = {}
    for e in entries:
        if e.prefixed and e.process_group:
            by_group[e.process_group] = by_group.get(e.process_group, 0) + 1
    return {
        "entries": len(entries),
        "pairs": len(pair_ids),
        "bare_only": sum(1 for e in entries if e.pair_id is None),
        "prefixed_checked": checked,
        "pairs_per_process": by_group,
        "harmony_bearing": sum(1 for e in entries if e.pair_id is not None),
    }


# --- manifest + audio persistence ---------------------------------------------

MANIFEST_FIELDS = [
    "entry_id",
    "pair_id",
    "orthography",
    "ipa",
    "segments",
    "prefix_shape",
    "harmony_class",
    "process_group",
    "gold_json",
    "wav_path",
]


def write_corpus(
    entries: list[CorpusEntry], out_dir: str | Path, with_audio: bool = True
) -> Path:
    """Write manifest.csv (one row per entry) and 16-bit PCM WAVs under out_dir."""
    from .audio import write_wav

    out = Path(out_dir)
    (out / "wav").mkdir(parents=True, exist_ok=True)
    manifest = out / "manifest.csv"
    with open(manifest, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=MANIFEST_FIELDS)
        w.writeheader()
        for e in entries:
            if with_audio:
                if e.waveform is None or e.sample_rate is None:
                    raise CorpusError(f"{e.entry_id}: no waveform to write")
                e.wav_path = f"wav/{e.entry_id}.wav"
                write_wav(out / e.wav_path, e.waveform, e.sample_rate)
            w.writerow(
                {
                    "entry_id": e.entry_id,
                    "pair_id": e.pair_id or "",
                    "orthography": e.orthography,
                    "ipa": e.ipa(),
                    "segments": "-".join(s.symbol for s in e.surface_segments),
                    "prefix_shape": e.prefix_shape,
                    "harmony_class": e.harmony_class,
                    "process_group": e.process_group or "",
                    "gold_json": json.dumps(e.gold.to_dict()),
                    "wav_path": e.wav_path or "",
                }
            )
    return manifest


def read_manifest(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r["gold"] = AnnotationRecord.from_dict(json.loads(r["gold_json"]))
    return rows
