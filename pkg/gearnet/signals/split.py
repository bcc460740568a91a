"""Seeded per-condition train/validation splits."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from gearnet.dataset import LabeledDataset
from gearnet.errors import SplitError

logger = logging.getLogger(__name__)

CANONICAL_PER_CONDITION = 104


def train_count(fraction: float, per_condition: int = CANONICAL_PER_CONDITION) -> int:
    """round(fraction x per_condition) with halves rounded up, never below one."""
    if not 0.0 < fraction <= 1.0:
        raise SplitError(f"training fraction {fraction} must lie in (0, 1]")
    return max(1, math.floor(fraction * per_condition + 0.5))


@dataclass(frozen=True)
class DatasetSplit:
    train_fraction: float
    per_condition_train_count: int
    split_seed: int

    def __post_init__(self) -> None:
        if self.per_condition_train_count < 1:
            raise SplitError(
                f"per-condition train count must be positive, got {self.per_condition_train_count}"
            )

    @classmethod
    def from_fraction(
        cls, fraction: float, split_seed: int, per_condition: int = CANONICAL_PER_CONDITION
    ) -> DatasetSplit:
        return cls(fraction, train_count(fraction, per_condition), split_seed)


def _condition_name(dataset: LabeledDataset, index: int, label: int) -> str:
    name = dataset.provenance[index].get("condition_name")
    return f"{label} ({name})" if name else str(label)


def min_condition_count(labels: npt.NDArray[np.int64]) -> int:
    """Smallest per-condition sample count; every label in 0..max must be present."""
    labels = np.asarray(labels)
    if labels.size == 0:
        raise SplitError("cannot split an empty dataset")
    counts = np.bincount(labels)
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        raise SplitError(f"conditions {missing.tolist()} have no samples")
    return int(counts.min())


def stratified_indices(
    labels: npt.NDArray[np.int64], count: int, seed: int
) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    """Sorted (train, validation) indices with ``count`` train draws per label.

    Labels are visited in ascending order from a single generator seeded
    with ``seed``.
    """
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    train_idx: list[npt.NDArray[np.intp]] = []
    val_idx: list[npt.NDArray[np.intp]] = []
    for label in np.unique(labels):
        members = np.flatnonzero(labels == label)
        if members.size < count:
            raise SplitError(
                f"condition {label} has {members.size} samples, {count} needed for training"
            )
        picked = np.sort(rng.choice(members, size=count, replace=False))
        train_idx.append(picked)
        val_idx.append(np.setdiff1d(members, picked))
    return np.concatenate(train_idx), np.concatenate(val_idx)


def split_dataset(
    dataset: LabeledDataset, split: DatasetSplit
) -> tuple[LabeledDataset, LabeledDataset]:
    """Draw ``per_condition_train_count`` samples per label without replacement.

    Everything not drawn goes to validation.
    """
    count = split.per_condition_train_count
    for label in np.unique(dataset.labels):
        members = np.flatnonzero(dataset.labels == label)
        if members.size < count:
            raise SplitError(
                f"condition {_condition_name(dataset, int(members[0]), int(label))} has "
                f"{members.size} samples, {count} needed for training"
            )
    train_idx, val_idx = stratified_indices(dataset.labels, count, split.split_seed)
    logger.debug(
        "Split fraction %s seed %d: %d train / %d validation",
        split.train_fraction,
        split.split_seed,
        train_idx.size,
        val_idx.size,
    )
    return dataset.subset(train_idx), dataset.subset(val_idx)
