"""Whole-network gradient check on sampled parameter coordinates."""

from __future__ import annotations

import logging

import numpy as np

from gearnet.nn.gradcheck import relative_error
from gearnet.nn.loss import LossConfig
from gearnet.nn.tensor import Tensor
from gearnet.network.model import Network
from gearnet.optim.trainer import batch_loss_and_gradients

logger = logging.getLogger(__name__)


def check_network_gradients(
    network: Network,
    x: Tensor,
    label: int,
    eps: float = 1e-5,
    coords_per_tensor: int = 4,
    rng: np.random.Generator | None = None,
    loss_config: LossConfig | None = None,
) -> dict[str, float]:
    """Relative error between backprop and central differences, per parameter tensor.

    Runs in eval mode so dropout is the identity. Only ``coords_per_tensor``
    randomly chosen coordinates of each tensor are perturbed.
    """
    rng = rng or np.random.default_rng(0)
    loss_config = loss_config or LossConfig(gamma=5e-4, num_classes=network.spec.num_classes)
    images = np.asarray(x, dtype=np.float64)[np.newaxis]
    labels = np.array([label])

    previous = network.mode
    network.set_mode("eval")
    try:
        _, _, grads = batch_loss_and_gradients(network, images, labels, loss_config)
        errors: dict[str, float] = {}
        for name, theta in network.parameters.items():
            flat = theta.reshape(-1)
            picks = rng.choice(flat.size, size=min(coords_per_tensor, flat.size), replace=False)
            numeric = np.empty(len(picks))
            for k, j in enumerate(picks):
                original = flat[j]
                flat[j] = original + eps
                plus, _, _ = batch_loss_and_gradients(network, images, labels, loss_config)
                flat[j] = original - eps
                minus, _, _ = batch_loss_and_gradients(network, images, labels, loss_config)
                flat[j] = original
                numeric[k] = (plus - minus) / (2.0 * eps)
            errors[name] = relative_error(grads[name].reshape(-1)[picks], numeric)
    finally:
        network.set_mode(previous)
    logger.debug("network gradcheck %s: %s", network.spec.name, errors)
    return errors
