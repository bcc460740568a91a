"""SGD with momentum and the mini-batch training loop."""

from gearnet.optim.sgd import OptimizerConfig, SGDMomentum, VelocityState, sgd_momentum_step
from gearnet.optim.trainer import (
    HistoryEntry,
    batch_loss_and_gradients,
    fit,
    train_epoch,
    write_history_csv,
)

__all__ = [
    "HistoryEntry",
    "OptimizerConfig",
    "SGDMomentum",
    "VelocityState",
    "batch_loss_and_gradients",
    "fit",
    "sgd_momentum_step",
    "train_epoch",
    "write_history_csv",
]
