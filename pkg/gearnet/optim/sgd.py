"""Stochastic gradient descent with momentum and per-layer learning-rate multipliers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from gearnet.errors import ConfigurationError
from gearnet.nn.tensor import Tensor
from gearnet.network.model import layer_index_of

logger = logging.getLogger(__name__)


@dataclass
class OptimizerConfig:
    """Base rate α, momentum β, per-layer multipliers (default 1.0) and the step counter."""

    base_learning_rate: float
    momentum: float = 0.0
    per_layer_lr_multipliers: dict[int, float] = field(default_factory=dict)
    iteration: int = 0

    def __post_init__(self) -> None:
        if self.base_learning_rate < 0:
            raise ConfigurationError(
                f"base learning rate must be non-negative, got {self.base_learning_rate}"
            )
        if not 0.0 <= self.momentum < 1.0:
            raise ConfigurationError(f"momentum must lie in [0, 1), got {self.momentum}")
        for index, mult in self.per_layer_lr_multipliers.items():
            if mult < 0:
                raise ConfigurationError(f"layer {index}: lr multiplier {mult} is negative")

    def multiplier(self, layer_index: int) -> float:
        return self.per_layer_lr_multipliers.get(layer_index, 1.0)

    def effective_rate(self, layer_index: int) -> float:
        return self.base_learning_rate * self.multiplier(layer_index)


class VelocityState(dict[str, Tensor]):
    """One zero-initialised velocity tensor per parameter tensor."""

    @classmethod
    def zeros_like(cls, params: dict[str, Tensor]) -> VelocityState:
        return cls({name: np.zeros_like(p) for name, p in params.items()})


def sgd_momentum_step(
    params: dict[str, Tensor],
    grads: dict[str, Tensor],
    velocity: VelocityState,
    config: OptimizerConfig,
) -> None:
    """v ← βv − α·mult·g, then θ ← θ + v, in place; advances ``config.iteration``.

    With v holding the previous displacement this equals
    θ' = θ − α·g + β(θ − θ_prev). Layers whose multiplier is 0 are skipped
    entirely, so their parameters and velocities stay bitwise unchanged.
    """
    for name, theta in params.items():
        if name not in grads:
            raise ConfigurationError(f"no gradient supplied for {name}")
        g = grads[name]
        v = velocity.setdefault(name, np.zeros_like(theta))
        if g.shape != theta.shape or v.shape != theta.shape:
            raise ConfigurationError(
                f"{name}: parameter {theta.shape}, gradient {g.shape}, velocity {v.shape} differ"
            )
        index = layer_index_of(name)
        if config.multiplier(index) == 0.0:
            continue
        v *= config.momentum
        v -= config.effective_rate(index) * g
        theta += v
    config.iteration += 1


class SGDMomentum:
    """Owns the velocity state of one network's parameters across steps."""

    def __init__(self, config: OptimizerConfig):
        self.config = config
        self.velocity = VelocityState()

    @property
    def iteration(self) -> int:
        return self.config.iteration

    def step(self, params: dict[str, Tensor], grads: dict[str, Tensor]) -> None:
        sgd_momentum_step(params, grads, self.velocity, self.config)
        logger.debug("sgd step %d", self.config.iteration)
