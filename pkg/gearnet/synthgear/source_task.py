"""Source task for pretraining: class-parameterized oriented texture images.

Each class is a Gabor-like grating with its own orientation, spatial
frequency band and colour tint. Samples jitter phase, orientation,
frequency and contrast, then receive pixel noise. Nothing here resembles
an encoded vibration record.
"""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from gearnet.dataset import LabeledDataset
from gearnet.errors import SynthesisError

logger = logging.getLogger(__name__)

_FREQUENCY_BANDS = (2.0, 4.5)
PIXEL_NOISE = 0.08

Tint = npt.NDArray[np.float64]


def _class_parameters(label: int, num_classes: int) -> tuple[float, float, Tint]:
    orientation = np.pi * label / num_classes
    frequency = _FREQUENCY_BANDS[label % len(_FREQUENCY_BANDS)]
    hue = 2.0 * np.pi * label / num_classes
    tint = 0.6 + 0.4 * np.cos(hue + np.array([0.0, 2.0, 4.0]) * np.pi / 3.0)
    return orientation, frequency, tint


def generate_source_task(
    seed: int,
    num_classes: int = 6,
    samples_per_class: int = 200,
    image_shape: tuple[int, int, int] = (32, 32, 3),
) -> LabeledDataset:
    """``num_classes`` x ``samples_per_class`` images in [0, 1], fully determined by ``seed``."""
    if num_classes < 2:
        raise SynthesisError(f"source task needs at least 2 classes, got {num_classes}")
    if samples_per_class < 1:
        raise SynthesisError(f"samples_per_class must be positive, got {samples_per_class}")
    height, width, channels = image_shape
    if channels != 3:
        raise SynthesisError(f"source images are RGB, got {channels} channels")

    rng = np.random.default_rng(seed)
    yy, xx = np.meshgrid(
        np.linspace(-0.5, 0.5, height), np.linspace(-0.5, 0.5, width), indexing="ij"
    )
    total = num_classes * samples_per_class
    images = np.empty((total, height, width, 3))
    labels = np.repeat(np.arange(num_classes), samples_per_class)
    jitter = np.pi / (4.0 * num_classes)
    for i, label in enumerate(labels):
        orientation, frequency, tint = _class_parameters(int(label), num_classes)
        angle = orientation + rng.uniform(-jitter, jitter)
        cycles = frequency * rng.uniform(0.85, 1.15)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        contrast = rng.uniform(0.6, 1.0)
        sigma = rng.uniform(0.25, 0.45)
        cx, cy = rng.uniform(-0.15, 0.15, 2)
        along = (xx - cx) * np.cos(angle) + (yy - cy) * np.sin(angle)
        envelope = np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2.0 * sigma**2))
        grating = 0.5 + 0.5 * contrast * envelope * np.cos(2.0 * np.pi * cycles * along + phase)
        image = grating[:, :, None] * tint[None, None, :]
        image += PIXEL_NOISE * rng.standard_normal(image.shape)
        images[i] = np.clip(image, 0.0, 1.0)
    logger.info(
        "Source task: %d classes x %d images of %dx%d",
        num_classes,
        samples_per_class,
        height,
        width,
    )
    provenance = [{"source": "texture", "class": int(c)} for c in labels]
    return LabeledDataset(images, labels, provenance)
