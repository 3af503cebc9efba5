"""Label records shared between the corpus (gold labels) and the annotator."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

MANNER_STOP = "stop"
MANNER_FRICATIVE = "fricative"
MANNER_SONORANT = "sonorant"


@dataclass
class AnnotationRecord:
    """Machine-readable labels for one waveform.

    Optional fields are None when the classification was impossible; each
    measured field carries a confidence in [0, 1]. ``harmonious`` is defined
    exactly when the form is prefixed and both frontness calls succeeded, and
    then equals their agreement.
    """

    analyzable: bool = False
    prefixed: bool = False
    prefix_shape: str = "none"  # V | VN | none
    prefix_vowel_front: bool | None = None
    v2_front: bool | None = None
    c1_voiced: bool | None = None
    c1_manner: str | None = None  # stop | fricative | sonorant
    harmonious: bool | None = None
    confidence: dict[str, float] = field(default_factory=dict)

    def finalize_harmony(self) -> None:
        if self.prefixed and self.prefix_vowel_front is not None and self.v2_front is not None:
            self.harmonious = self.prefix_vowel_front == self.v2_front
        else:
            self.harmonious = None

    def label_tuple(self) -> tuple:
        """Discrete label signature used for novelty/conformity comparisons."""
        return (
            self.prefixed,
            self.prefix_shape,
            self.prefix_vowel_front,
            self.v2_front,
            self.c1_voiced,
            self.c1_manner,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AnnotationRecord":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})

    def matches_gold(self, gold: "AnnotationRecord") -> bool:
        """Field-exact agreement on every label field (confidences ignored)."""
        return self.label_tuple() == gold.label_tuple() and (
            self.analyzable == gold.analyzable and self.harmonious == gold.harmonious
        )
