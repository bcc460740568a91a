"""Resample, decimate and encode a corpus of time records into a labeled image dataset."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

import numpy as np

from gearnet.config import PipelineConfig
from gearnet.dataset import LabeledDataset
from gearnet.errors import SignalError
from gearnet.signals.encode import encode_image
from gearnet.signals.records import TimeRecord
from gearnet.signals.resample import angle_resample, decimate

logger = logging.getLogger(__name__)


def build_image_dataset(
    records: Sequence[TimeRecord],
    manifest: Sequence[dict[str, Any]],
    pipeline: PipelineConfig,
    target_shape: tuple[int, int, int],
) -> LabeledDataset:
    """One image per record, labeled from its manifest row; provenance keeps the row."""
    if len(records) != len(manifest):
        raise SignalError(f"{len(records)} records but {len(manifest)} manifest rows")
    if not records:
        raise SignalError("cannot build a dataset from an empty corpus")
    height, width, channels = target_shape
    if channels != 3:
        raise SignalError(f"encoders emit 3 channels, network expects {channels}")

    images = np.empty((len(records), height, width, 3))
    labels = np.empty(len(records), dtype=np.int64)
    provenance: list[dict[str, Any]] = []
    for i, (record, row) in enumerate(zip(records, manifest, strict=True)):
        label = int(row["condition"])
        angle = angle_resample(
            record, pipeline.samples_per_revolution, pipeline.revolutions, label
        )
        if pipeline.decimate > 1:
            angle = decimate(angle, pipeline.decimate)
        sample = encode_image(angle, pipeline.encoder, (height, width), str(row.get("file", i)))
        images[i] = sample.pixels
        labels[i] = label
        provenance.append({**row, "encoder": pipeline.encoder, "decimate": pipeline.decimate})
    logger.info(
        "Encoded %d records (%s, decimate %d) into %dx%d images",
        len(records),
        pipeline.encoder,
        pipeline.decimate,
        height,
        width,
    )
    return LabeledDataset(images, labels, provenance)
