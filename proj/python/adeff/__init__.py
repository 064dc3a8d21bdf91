"""Advertisement-effectiveness toolkit: python surface over the C++ core."""

from adeff._core import (
    Classifier,
    aggregate_mode,
    audio_loudness,
    average_hue,
    average_intensity,
    average_memorability,
    coefficient_of_variation,
    flow_entropy,
    generate_corpus,
    label_distribution,
    meaningful_words,
    median_hue,
    optical_flow_hist,
    pearson,
    porter_stem,
    ratio_from_distribution,
    run_analyze,
    run_clean,
    run_features,
    run_train_eval,
    shot_boundaries,
    split_ids,
    text_block,
    tokenize,
    train_logreg,
    train_svm,
    train_tree,
)

__all__ = [
    "Classifier",
    "aggregate_mode",
    "audio_loudness",
    "average_hue",
    "average_intensity",
    "average_memorability",
    "coefficient_of_variation",
    "flow_entropy",
    "generate_corpus",
    "label_distribution",
    "meaningful_words",
    "median_hue",
    "optical_flow_hist",
    "pearson",
    "porter_stem",
    "ratio_from_distribution",
    "run_analyze",
    "run_clean",
    "run_features",
    "run_train_eval",
    "shot_boundaries",
    "split_ids",
    "text_block",
    "tokenize",
    "train_logreg",
    "train_svm",
    "train_tree",
]
