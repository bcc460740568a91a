"""Mini-batch training loop and convergence history."""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.typing as npt

from gearnet.dataset import LabeledDataset
from gearnet.errors import ConfigurationError
from gearnet.nn.layers import softmax_forward
from gearnet.nn.loss import (
    LossConfig,
    cross_entropy_loss,
    softmax_cross_entropy_backward,
    weight_decay_gradient,
)
from gearnet.nn.tensor import Tensor
from gearnet.network.model import Network
from gearnet.optim.sgd import SGDMomentum

logger = logging.getLogger(__name__)

HISTORY_HEADER = ("iteration", "epoch", "minibatch_loss", "minibatch_accuracy")


@dataclass(frozen=True)
class HistoryEntry:
    iteration: int
    epoch: int
    loss: float
    accuracy: float


def derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def batch_loss_and_gradients(
    network: Network,
    images: Tensor,
    labels: npt.NDArray[np.integer],
    loss_config: LossConfig,
    dropout_seed: int = 0,
) -> tuple[float, float, dict[str, Tensor]]:
    """Forward a batch, return (mean loss incl. γΣθ², batch accuracy, parameter gradients)."""
    logits, tape = network.forward_train(images, dropout_seed)
    probs = softmax_forward(logits)
    loss = cross_entropy_loss(probs, labels, network.parameters.values(), loss_config)
    grads = network.backward(tape, softmax_cross_entropy_backward(probs, labels))
    if loss_config.gamma > 0:
        for name, theta in network.parameters.items():
            grads[name] = grads[name] + weight_decay_gradient(theta, loss_config.gamma)
    accuracy = float(np.mean(probs.argmax(axis=1) == labels))
    return loss, accuracy, grads


def train_epoch(
    network: Network,
    dataset: LabeledDataset,
    batch_size: int,
    optimizer: SGDMomentum,
    loss_config: LossConfig,
    shuffle_seed: int,
    *,
    epoch: int = 1,
    dropout_seed: int | None = None,
) -> list[HistoryEntry]:
    """One pass over a seeded shuffle of ``dataset``, final partial batch included.

    Batch b draws its dropout masks from (dropout_seed, b); ``dropout_seed``
    defaults to ``shuffle_seed``.
    """
    if len(dataset) == 0:
        raise ConfigurationError("cannot train on an empty dataset")
    if batch_size < 1:
        raise ConfigurationError(f"batch size must be at least 1, got {batch_size}")

    order = np.random.default_rng(shuffle_seed).permutation(len(dataset))
    base_dropout = shuffle_seed if dropout_seed is None else dropout_seed
    history: list[HistoryEntry] = []
    previous = network.mode
    network.set_mode("train")
    try:
        for b, start in enumerate(range(0, len(dataset), batch_size)):
            idx = order[start : start + batch_size]
            loss, accuracy, grads = batch_loss_and_gradients(
                network,
                dataset.images[idx],
                dataset.labels[idx],
                loss_config,
                derive_seed(base_dropout, b),
            )
            optimizer.step(network.parameters, grads)
            history.append(HistoryEntry(optimizer.iteration, epoch, loss, accuracy))
            logger.debug(
                "iter %d epoch %d loss %.5f acc %.3f", optimizer.iteration, epoch, loss, accuracy
            )
    finally:
        network.set_mode(previous)
    return history


def fit(
    network: Network,
    dataset: LabeledDataset,
    epochs: int,
    batch_size: int,
    optimizer: SGDMomentum,
    loss_config: LossConfig,
    seed: int,
) -> list[HistoryEntry]:
    """Run ``epochs`` epochs, each shuffled with a seed derived from (seed, epoch)."""
    if epochs < 1:
        raise ConfigurationError(f"epochs must be at least 1, got {epochs}")
    history: list[HistoryEntry] = []
    for epoch in range(1, epochs + 1):
        entries = train_epoch(
            network,
            dataset,
            batch_size,
            optimizer,
            loss_config,
            derive_seed(seed, epoch),
            epoch=epoch,
        )
        history.extend(entries)
        logger.info(
            "%s epoch %d/%d: loss %.4f, mini-batch accuracy %.3f",
            network.spec.name,
            epoch,
            epochs,
            entries[-1].loss,
            entries[-1].accuracy,
        )
    return history


def write_history_csv(history: Iterable[HistoryEntry], path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(HISTORY_HEADER)
        for h in history:
            writer.writerow([h.iteration, h.epoch, repr(h.loss), repr(h.accuracy)])
    return path
