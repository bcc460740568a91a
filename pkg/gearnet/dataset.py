"""Labeled image datasets shared by training, evaluation and the sweep."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt

from gearnet.errors import ConfigurationError
from gearnet.nn.tensor import Tensor


@dataclass
class LabeledDataset:
    """Encoded input images [N, H, W, C], integer labels [N] and per-sample provenance."""

    images: Tensor
    labels: npt.NDArray[np.int64]
    provenance: list[dict[str, Any]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.images.ndim != 4:
            raise ConfigurationError(
                f"dataset images must be [N, H, W, C], got {self.images.shape}"
            )
        if self.images.shape[0] != self.labels.shape[0]:
            raise ConfigurationError(
                f"{self.images.shape[0]} images but {self.labels.shape[0]} labels"
            )
        if not self.provenance:
            self.provenance = [{} for _ in range(len(self.labels))]

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    @property
    def image_shape(self) -> tuple[int, int, int]:
        _, h, w, c = self.images.shape
        return (h, w, c)

    def subset(self, indices: Sequence[int] | npt.NDArray[np.integer]) -> LabeledDataset:
        idx = np.asarray(indices, dtype=np.int64)
        return LabeledDataset(
            images=self.images[idx],
            labels=self.labels[idx],
            provenance=[self.provenance[i] for i in idx],
        )

    @classmethod
    def concatenate(cls, parts: Sequence[LabeledDataset]) -> LabeledDataset:
        if not parts:
            raise ConfigurationError("cannot concatenate zero datasets")
        return cls(
            images=np.concatenate([p.images for p in parts]),
            labels=np.concatenate([p.labels for p in parts]),
            provenance=[row for p in parts for row in p.provenance],
        )
