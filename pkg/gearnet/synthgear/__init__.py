"""Synthetic gearbox vibration corpus and the pretraining source task."""

from gearnet.synthgear.conditions import ConditionSpec, canonical_conditions
from gearnet.synthgear.generator import (
    Corpus,
    generate_dataset,
    generate_signal,
    load_corpus,
    nearest_centroid_accuracy,
    save_corpus,
)
from gearnet.synthgear.source_task import generate_source_task

__all__ = [
    "ConditionSpec",
    "Corpus",
    "canonical_conditions",
    "generate_dataset",
    "generate_signal",
    "generate_source_task",
    "load_corpus",
    "nearest_centroid_accuracy",
    "save_corpus",
]
