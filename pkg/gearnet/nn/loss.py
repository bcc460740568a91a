"""Cross-entropy objective with squared-norm weight decay."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from gearnet.errors import ConfigurationError
from gearnet.nn.tensor import Tensor

PROBABILITY_FLOOR = 1e-15


@dataclass(frozen=True)
class LossConfig:
    gamma: float = 5e-4
    num_classes: int = 9

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ConfigurationError(f"gamma must be non-negative, got {self.gamma}")
        if self.num_classes < 1:
            raise ConfigurationError(f"num_classes must be positive, got {self.num_classes}")


def squared_norm(params: Iterable[Tensor]) -> float:
    """Σθ² over every parameter tensor."""
    return math.fsum(float(np.sum(p * p)) for p in params)


def cross_entropy_loss(
    probabilities: Tensor,
    label: int | npt.NDArray[np.integer],
    params: Iterable[Tensor],
    config: LossConfig,
) -> float:
    """−ln p[label] (averaged over a batch) plus gamma·Σθ².

    Probabilities are floored at 1e-15 before the log so confident wrong
    predictions stay finite.
    """
    probs = np.atleast_2d(probabilities)
    labels = np.atleast_1d(np.asarray(label))
    if probs.shape[-1] != config.num_classes:
        raise ConfigurationError(
            f"probabilities have {probs.shape[-1]} classes, loss expects {config.num_classes}"
        )
    if labels.shape[0] != probs.shape[0]:
        raise ConfigurationError(
            f"{labels.shape[0]} labels given for {probs.shape[0]} predictions"
        )
    if np.any(labels < 0) or np.any(labels >= config.num_classes):
        raise ConfigurationError(f"label out of range 0..{config.num_classes - 1}")

    picked = probs[np.arange(probs.shape[0]), labels]
    data_term = float(np.mean(-np.log(np.maximum(picked, PROBABILITY_FLOOR))))
    if config.gamma == 0:
        return data_term
    return data_term + config.gamma * squared_norm(params)


def softmax_cross_entropy_backward(
    probabilities: Tensor, label: int | npt.NDArray[np.integer]
) -> Tensor:
    """Gradient of the batch-mean cross-entropy with respect to the logits: (p − onehot)/N."""
    if probabilities.ndim == 1:
        grad = probabilities.copy()
        grad[int(label)] -= 1.0
        return grad
    labels = np.asarray(label)
    n = probabilities.shape[0]
    grad = probabilities.copy()
    grad[np.arange(n), labels] -= 1.0
    return grad / n


def weight_decay_gradient(theta: Tensor, gamma: float) -> Tensor:
    return 2.0 * gamma * theta
