"""Morphophonology of the artificial grammar.

Three rule families derive prefixed surface forms:

* vowel harmony: the prefix vowel copies the frontness of the first root
  vowel across any intervening consonants (E after i/E, O after A/O/u);
* a local consonant process on C1, keyed to the prefix shape and, for the
  plain-V prefix, to the item's assigned process group;
* nasal place assimilation inside the VN- prefix (m before labials).

``check_surface_form`` re-derives none of this: it verifies a surface form
against its own literal rule tables so corpus construction and verification
stay independent code paths.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import segments
from .segments import FRONT_VOWELS, BACK_VOWELS, LABIAL, NASAL, STOP, FRICATIVE, Segment

PREFIX_V = "V"
PREFIX_VN = "VN"
PREFIX_NONE = "none"

# local process groups (which change C1 undergoes when prefixed)
POSTNASAL_DEVOICING = "postnasal_devoicing"  # voiced stop + VN  -> aspirated stop
POSTNASAL_OCCLUSION = "postnasal_occlusion"  # voiced fric + VN  -> aspirated stop
INTERVOCALIC_DEVOICING = "intervocalic_devoicing"  # voiced stop + V -> aspirated stop
INTERVOCALIC_FRICATIVIZATION = "intervocalic_fricativization"  # voiced stop + V -> voiceless fric
LOCAL_PROCESSES = (
    POSTNASAL_DEVOICING,
    POSTNASAL_OCCLUSION,
    INTERVOCALIC_DEVOICING,
    INTERVOCALIC_FRICATIVIZATION,
)


class GrammarError(ValueError):
    """Raised for inputs outside the grammar (unknown vowel, missing group)."""


def harmony_vowel(v2: Segment | str) -> Segment:
    """Prefix vowel agreeing in frontness with the first root vowel (v2)."""
    sym = v2.symbol if isinstance(v2, Segment) else v2
    if sym in FRONT_VOWELS:
        return segments.get("E")
    if sym in BACK_VOWELS:
        return segments.get("O")
    raise GrammarError(f"{sym!r} is not a harmony-triggering vowel")


# devoicing/occlusion targets: voiced obstruent -> aspirated voiceless stop, same place
_TO_ASPIRATED = {"b": "ph", "v": "ph", "d": "th", "z": "th"}
# fricativization targets: voiced stop -> voiceless fricative, same place
_TO_FRICATIVE = {"b": "f", "d": "s"}


def apply_local_process(
    c1: Segment, prefix_shape: str, process_group: str | None = None
) -> Segment:
    """Surface C1 after the local process triggered by prefixation."""
    if prefix_shape not in (PREFIX_V, PREFIX_VN):
        raise GrammarError(f"prefix shape must be V or VN, got {prefix_shape!r}")
    if not (c1.is_obstruent and c1.voiced):
        return c1
    if prefix_shape == PREFIX_VN:
        # both stops (devoicing) and fricatives (occlusion + devoicing) end aspirated
        return segments.get(_TO_ASPIRATED[c1.symbol])
    if process_group == INTERVOCALIC_DEVOICING:
        return segments.get(_TO_ASPIRATED[c1.symbol])
    if process_group == INTERVOCALIC_FRICATIVIZATION:
        if c1.category != STOP:
            raise GrammarError(f"fricativization applies to stops, got {c1.symbol!r}")
        return segments.get(_TO_FRICATIVE[c1.symbol])
    raise GrammarError(
        f"voiced C1 {c1.symbol!r} with V- prefix needs an intervocalic process group"
    )


def nasal_assimilation(c1_surface: Segment) -> Segment:
    """Prefix nasal place: labial m before labials (p/f), coronal n elsewhere."""
    if c1_surface.place == LABIAL and c1_surface.is_obstruent:
        return segments.get("m")
    return segments.get("n")


@dataclass(frozen=True)
class LexicalItem:
    """A bare root of shape C1 V2 C3 (V4)."""

    segments: tuple[Segment, ...]
    stress: int = 0  # index of the stressed vowel segment

    def __post_init__(self):
        segs = self.segments
        if len(segs) not in (3, 4):
            raise GrammarError(f"root must be CVC(V), got {len(segs)} segments")
        c1, v2, c3 = segs[0], segs[1], segs[2]
        if c1.category == NASAL:
            raise GrammarError(f"C1 may not be a nasal ({c1.symbol})")
        if c1.is_vowel or not v2.is_vowel or c3.is_vowel:
            raise GrammarError("root shape must be CVC(V)")
        if c3.is_obstruent and c3.symbol != "s":
            raise GrammarError(f"only s may be an obstruent C3, got {c3.symbol}")
        if len(segs) == 4 and not segs[3].is_vowel:
            raise GrammarError("V4 must be a vowel")

    @property
    def c1(self) -> Segment:
        return self.segments[0]

    @property
    def v2(self) -> Segment:
        return self.segments[1]

    @property
    def c3(self) -> Segment:
        return self.segments[2]

    @property
    def v4(self) -> Segment | None:
        return self.segments[3] if len(self.segments) == 4 else None

    def spelled(self) -> str:
        return "".join(s.symbol for s in self.segments)


def prefixed_surface(
    item: LexicalItem, prefix_shape: str, process_group: str | None = None
) -> tuple[Segment, ...]:
    """Derive the full prefixed surface form (prefix + root with C1 change)."""
    c1_surface = apply_local_process(item.c1, prefix_shape, process_group)
    prefix = [harmony_vowel(item.v2)]
    if prefix_shape == PREFIX_VN:
        prefix.append(nasal_assimilation(c1_surface))
    return tuple(prefix) + (c1_surface,) + item.segments[1:]


# --- independent surface checker ---------------------------------------------
# Literal tables restating the grammar; deliberately not calling the builders.

_CHK_FRONT = {"i": True, "E": True, "A": False, "O": False, "u": False}
_CHK_PREFIX_OF = {True: "E", False: "O"}
_CHK_LOCAL = {
    (PREFIX_VN, POSTNASAL_DEVOICING): {"b": "ph", "d": "th"},
    (PREFIX_VN, POSTNASAL_OCCLUSION): {"v": "ph", "z": "th"},
    (PREFIX_V, INTERVOCALIC_DEVOICING): {"b": "ph", "d": "th"},
    (PREFIX_V, INTERVOCALIC_FRICATIVIZATION): {"b": "f", "d": "s"},
}
_CHK_LABIAL_ONSETS = {"p", "ph", "f"}


def check_surface_form(
    surface: tuple[Segment, ...],
    underlying: LexicalItem,
    prefix_shape: str,
    process_group: str | None,
) -> list[str]:
    """Return rule violations in a prefixed surface form (empty = well-formed)."""
    problems: list[str] = []
    if prefix_shape == PREFIX_NONE:
        if surface != underlying.segments:
            problems.append("bare form must equal the underlying root")
        return problems

    root_start = 1 + (1 if prefix_shape == PREFIX_VN else 0)
    if len(surface) != root_start + len(underlying.segments):
        return [f"surface length {len(surface)} wrong for {prefix_shape}-prefixed root"]
    pv, root = surface[0], surface[root_start:]

    v2 = root[1]
    want_front = _CHK_FRONT.get(v2.symbol)
    if want_front is None:
        problems.append(f"V2 {v2.symbol!r} is not a harmony trigger")
    elif pv.symbol != _CHK_PREFIX_OF[want_front]:
        problems.append(
            f"harmony: prefix vowel {pv.symbol} does not agree with V2 {v2.symbol}"
        )

    c1 = root[0]
    if c1.is_obstruent and c1.voiced:
        problems.append(f"voiced obstruent {c1.symbol} survives after a prefix")
    table = _CHK_LOCAL.get((prefix_shape, process_group)) if process_group else None
    if underlying.c1.is_obstruent and underlying.c1.voiced:
        if table is None:
            problems.append(f"voiced C1 without a local process for {prefix_shape}")
        elif table.get(underlying.c1.symbol) != c1.symbol:
            problems.append(
                f"local process: {underlying.c1.symbol} should surface as "
                f"{table.get(underlying.c1.symbol)}, found {c1.symbol}"
            )
    elif c1.symbol != underlying.c1.symbol:
        problems.append(f"unchangeable C1 {underlying.c1.symbol} surfaced as {c1.symbol}")

    if root[1:] != underlying.segments[1:]:
        problems.append("root material after C1 was altered")

    if prefix_shape == PREFIX_VN:
        nas = surface[1]
        if nas.category != NASAL:
            problems.append(f"VN prefix lacks a nasal, found {nas.symbol}")
        else:
            want = "m" if c1.symbol in _CHK_LABIAL_ONSETS else "n"
            if nas.symbol != want:
                problems.append(
                    f"nasal assimilation: expected {want} before {c1.symbol}, found {nas.symbol}"
                )
    return problems
