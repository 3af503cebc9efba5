"""Segment inventory: phonological features plus per-segment acoustic targets.

Symbols are ASCII-IPA: aspirated stops are the digraphs ``ph``/``th``, schwa is
``@``, the tap/rhotic is plain ``r``. ``ipa()`` renders the display form.

Acoustic targets are synthesis conventions (the annotator relies on them), not
measurements: front vowels keep F2 >= 1800 Hz and back/central vowels F2 <=
1450 Hz so a 1550 Hz threshold separates the harmony classes by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

STOP = "stop"
FRICATIVE = "fricative"
NASAL = "nasal"
LIQUID = "liquid"
GLIDE = "glide"
VOWEL = "vowel"

LABIAL = "labial"
CORONAL = "coronal"
DORSAL = "dorsal"
NO_PLACE = "n/a"

#: vowels that trigger/force harmony; schwa is harmony-neutral and excluded
FRONT_VOWELS = ("i", "E")
BACK_VOWELS = ("A", "O", "u")
NEUTRAL_VOWELS = ("@",)


@dataclass(frozen=True)
class SegmentAcoustics:
    """Synthesis targets for one segment.

    formant_targets/bandwidths cover F1..F3 for resonant segments. noise_band
    is (center_hz, bandwidth_hz) for frication or bursts. voicing_amplitude is
    the periodic-source level in 0..1; amplitude scales the whole segment
    relative to a stressed vowel.
    """

    duration_ms: float
    formant_targets: tuple[float, float, float] = (500.0, 1450.0, 2500.0)
    bandwidths: tuple[float, float, float] = (80.0, 120.0, 200.0)
    voicing_amplitude: float = 0.0
    amplitude: float = 1.0
    noise_band: tuple[float, float] | None = None
    noise_amplitude: float = 0.0
    vot_ms: float = 0.0
    burst: bool = False
    nasal_murmur: bool = False

    def __post_init__(self):
        if self.duration_ms <= 0:
            raise ValueError(f"duration must be positive, got {self.duration_ms}")


@dataclass(frozen=True)
class Segment:
    symbol: str
    category: str
    voiced: bool | None = None  # defined for obstruents (and sonorants, which are voiced)
    front: bool | None = None  # vowels only; None for the harmony-neutral schwa
    place: str = NO_PLACE
    acoustics: SegmentAcoustics = field(default=None)  # type: ignore[assignment]

    @property
    def is_vowel(self) -> bool:
        return self.category == VOWEL

    @property
    def is_obstruent(self) -> bool:
        return self.category in (STOP, FRICATIVE)

    @property
    def is_sonorant_consonant(self) -> bool:
        return self.category in (NASAL, LIQUID, GLIDE)


def _vowel(symbol, f1, f2, f3, front, dur=120.0, amp=1.0):
    return Segment(
        symbol,
        VOWEL,
        voiced=True,
        front=front,
        place=NO_PLACE,
        acoustics=SegmentAcoustics(
            duration_ms=dur,
            formant_targets=(f1, f2, f3),
            bandwidths=(70.0, 100.0, 180.0),
            voicing_amplitude=1.0,
            amplitude=amp,
        ),
    )


def _sonorant(symbol, category, f1, f2, f3, place=NO_PLACE, amp=0.5, murmur=False):
    return Segment(
        symbol,
        category,
        voiced=True,
        place=place,
        acoustics=SegmentAcoustics(
            duration_ms=90.0,
            formant_targets=(f1, f2, f3),
            bandwidths=(100.0, 200.0, 280.0) if murmur else (90.0, 150.0, 250.0),
            voicing_amplitude=1.0,
            amplitude=amp,
            nasal_murmur=murmur,
        ),
    )


def _fricative(symbol, place, center, width, voiced):
    return Segment(
        symbol,
        FRICATIVE,
        voiced=voiced,
        place=place,
        acoustics=SegmentAcoustics(
            duration_ms=80.0,
            voicing_amplitude=0.4 if voiced else 0.0,
            amplitude=0.45,
            noise_band=(center, width),
            noise_amplitude=0.65 if not voiced else 0.6,
        ),
    )


def _stop(symbol, place, burst_center, burst_width, voiced, vot_ms):
    # duration_ms is the closure; VOT (aspiration or short lag) is added after the burst
    return Segment(
        symbol,
        STOP,
        voiced=voiced,
        place=place,
        acoustics=SegmentAcoustics(
            duration_ms=70.0,
            voicing_amplitude=0.35 if voiced else 0.0,
            amplitude=0.5,
            noise_band=(burst_center, burst_width),
            noise_amplitude=0.5,
            vot_ms=vot_ms,
            burst=True,
        ),
    )


INVENTORY: dict[str, Segment] = {
    seg.symbol: seg
    for seg in [
        # vowels (F1, F2, F3); front/back F2 classes separable at 1550 Hz
        _vowel("i", 280, 2250, 3000, front=True),
        _vowel("E", 550, 1950, 2600, front=True),
        _vowel("A", 750, 1200, 2500, front=False),
        _vowel("O", 550, 900, 2400, front=False),
        _vowel("u", 320, 900, 2250, front=False),
        _vowel("@", 500, 1450, 2500, front=None, dur=100.0),
        # glides mirror their corner vowels at reduced amplitude
        _sonorant("j", GLIDE, 280, 2250, 3000),
        _sonorant("w", GLIDE, 290, 750, 2300),
        # liquids; the rhotic carries the low-F3 cue
        _sonorant("l", LIQUID, 360, 1100, 2900),
        _sonorant("r", LIQUID, 350, 1150, 1690),
        # nasal murmurs: low F1 dominance, weak upper structure
        _sonorant("m", NASAL, 250, 1000, 2200, place=LABIAL, amp=0.28, murmur=True),
        _sonorant("n", NASAL, 250, 1350, 2400, place=CORONAL, amp=0.28, murmur=True),
        # fricatives
        _fricative("s", CORONAL, 5000, 3000, voiced=False),
        _fricative("z", CORONAL, 5000, 3000, voiced=True),
        _fricative("f", LABIAL, 3500, 3600, voiced=False),
        _fricative("v", LABIAL, 3500, 3600, voiced=True),
        # stops: aspirated voiceless (long VOT) and plain voiced (short VOT)
        _stop("ph", LABIAL, 1500, 2400, voiced=False, vot_ms=60.0),
        _stop("th", CORONAL, 4200, 2600, voiced=False, vot_ms=60.0),
        _stop("p", LABIAL, 1500, 2400, voiced=False, vot_ms=15.0),
        _stop("t", CORONAL, 4200, 2600, voiced=False, vot_ms=15.0),
        _stop("b", LABIAL, 1500, 2400, voiced=True, vot_ms=10.0),
        _stop("d", CORONAL, 4200, 2600, voiced=True, vot_ms=10.0),
    ]
}

_IPA = {"ph": "pʰ", "th": "tʰ", "r": "ɾ", "@": "ə"}

#: multi-character symbols, longest first, for tokenizing segment strings
_DIGRAPHS = ("ph", "th")


def ipa(symbol: str) -> str:
    return _IPA.get(symbol, symbol)


def get(symbol: str) -> Segment:
    try:
        return INVENTORY[symbol]
    except KeyError:
        raise KeyError(f"unknown segment symbol {symbol!r}") from None


def tokenize(segment_string: str) -> list[Segment]:
    """Split a compact segment string ('Om-phAlu' -> Om+phAlu) into Segments.

    The '-' prefix separator is ignored; digraph symbols take precedence.
    """
    out: list[Segment] = []
    i = 0
    s = segment_string
    while i < len(s):
        if s[i] == "-":
            i += 1
            continue
        if s[i : i + 2] in _DIGRAPHS:
            out.append(get(s[i : i + 2]))
            i += 2
        else:
            out.append(get(s[i]))
            i += 1
    return out


def validate_inventory() -> None:
    """Assert the synthesis contracts the annotator depends on."""
    for seg in INVENTORY.values():
        ac = seg.acoustics
        if ac.duration_ms <= 0:
            raise AssertionError(f"{seg.symbol}: nonpositive duration")
        if seg.is_vowel and seg.symbol not in NEUTRAL_VOWELS:
            if seg.front is None:
                raise AssertionError(f"{seg.symbol}: vowel without frontness")
            f2 = ac.formant_targets[1]
            if seg.front and f2 < 1800:
                raise AssertionError(f"{seg.symbol}: front vowel with F2 < 1800")
            if not seg.front and f2 > 1300:
                raise AssertionError(f"{seg.symbol}: back vowel with F2 > 1300")
        if seg.is_vowel and seg.place != NO_PLACE:
            raise AssertionError(f"{seg.symbol}: vowel with consonantal place")
        if seg.is_obstruent and seg.voiced is None:
            raise AssertionError(f"{seg.symbol}: obstruent without voicing")
        if seg.category == STOP:
            if not seg.voiced and ac.vot_ms >= 50 and seg.symbol not in ("ph", "th"):
                raise AssertionError(f"{seg.symbol}: unexpected aspiration")
            if seg.voiced and ac.vot_ms > 20:
                raise AssertionError(f"{seg.symbol}: voiced stop with long VOT")


validate_inventory()
