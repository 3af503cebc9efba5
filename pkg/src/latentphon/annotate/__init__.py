"""Deterministic acoustic annotation of waveforms (no humans in the loop)."""

from .features import (
    AnnotationError,
    FormantMeasurement,
    SpectrogramGrid,
    compute_spectrogram,
    detect_voicing,
    measure_formants,
)
from .landmarks import Interval, frame_track, segment_landmarks
from .labeler import Annotator, annotate

__all__ = [
    "AnnotationError",
    "Annotator",
    "FormantMeasurement",
    "Interval",
    "SpectrogramGrid",
    "annotate",
    "compute_spectrogram",
    "detect_voicing",
    "frame_track",
    "measure_formants",
    "segment_landmarks",
]
