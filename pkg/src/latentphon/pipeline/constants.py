"""Published reference values displayed beside desk-scale measurements.

These numbers come from the original experiment (different audio, different
trained weights); reports show them strictly as labeled reference points,
never as expectations for a local run.
"""

REFERENCE = {
    "analyzable_rate": 0.935,
    "unanalyzable_of_500": 0.05,
    "novel_conforming_rate": 0.337,
    "prefixed_rate": 0.422,
    "harmonious_rate": 0.768,
    "local_error_rate": 0.018,
    "local_vs_nonlocal": {"odds_ratio": 16.2, "ci": [5.1, 83.0], "p": "<0.0001"},
    "harmony_glm": {"intercept": 1.34, "se": 0.19, "z": 7.20, "interaction_p": 0.771},
    "sweep_prefixed_rate": 0.814,
    "sweep_linear_slope": {"beta": -1.04, "z": -5.38, "p": "<0.0001"},
    "sweep_harmony_back": {"beta": 1.43, "z": 4.23},
    "sweep_harmony_sum_coded": {"beta": 1.41, "z": 6.30},
    "behavioral_harmony": {"beta": 0.56, "z": 5.01, "ci_pct": [57.6, 69.2]},
    "training_step_schedule": [7453, 9740, 14900, 20990],
}
