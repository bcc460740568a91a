"""Layer transplant: copy the first n trained layers of a source network into a new task."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from gearnet.errors import TransplantError
from gearnet.network.checkpoint import Checkpoint
from gearnet.network.model import Network, build_network, layer_index_of
from gearnet.network.spec import NetworkSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransferPlan:
    """Layers 1..n come from the source; n+1..m are trained on the new task.

    The multipliers scale the optimizer's base learning rate; with a base of
    1e-2, a transferred multiplier of 0.01 gives the 1e-4 slow fine-tune rate
    and 0 freezes the transplanted layers.
    """

    n_transfer_layers: int
    total_layers: int
    lr_multiplier_transferred: float = 0.01
    lr_multiplier_new: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.n_transfer_layers < self.total_layers:
            raise TransplantError(
                f"transfer plan needs 1 <= n < m, got n={self.n_transfer_layers}, "
                f"m={self.total_layers}"
            )
        if self.lr_multiplier_transferred < 0 or self.lr_multiplier_new < 0:
            raise TransplantError("learning-rate multipliers must be non-negative")

    @classmethod
    def from_rates(
        cls,
        n_transfer_layers: int,
        total_layers: int,
        lr_transferred: float,
        lr_new: float,
        freeze: bool = False,
    ) -> TransferPlan:
        """Express absolute per-group rates as multipliers of ``lr_new``."""
        return cls(
            n_transfer_layers,
            total_layers,
            0.0 if freeze else lr_transferred / lr_new,
            1.0,
        )

    def multipliers(self) -> dict[int, float]:
        return {
            i: self.lr_multiplier_transferred if i <= self.n_transfer_layers
            else self.lr_multiplier_new
            for i in range(1, self.total_layers + 1)
        }


def transplant(
    source: Checkpoint, target_spec: NetworkSpec, plan: TransferPlan, init_seed: int
) -> Network:
    """Build ``target_spec`` fresh from ``init_seed`` and overwrite layers 1..n with the source."""
    target_layers = target_spec.layers()
    source_layers = source.spec.layers()
    if plan.total_layers != len(target_layers):
        raise TransplantError(
            f"plan declares {plan.total_layers} layers, target {target_spec.name} has "
            f"{len(target_layers)}"
        )
    if plan.n_transfer_layers > len(source_layers):
        raise TransplantError(
            f"source {source.spec.name} has only {len(source_layers)} layers, "
            f"cannot transfer {plan.n_transfer_layers}"
        )
    if tuple(source.spec.input_shape) != tuple(target_spec.input_shape):
        raise TransplantError(
            f"input shapes differ: source {tuple(source.spec.input_shape)}, "
            f"target {tuple(target_spec.input_shape)}"
        )
    for i in range(plan.n_transfer_layers):
        src, dst = source_layers[i], target_layers[i]
        if src.model_dump() != dst.model_dump():
            raise TransplantError(
                f"layer {i + 1} differs between source ({src.kind}: {src.model_dump()}) and "
                f"target ({dst.kind}: {dst.model_dump()})"
            )

    network = build_network(target_spec, init_seed)
    copied = 0
    for name, tensor in source.parameters.items():
        if layer_index_of(name) <= plan.n_transfer_layers:
            network.parameters[name] = tensor.copy()
            copied += 1
    network.lr_multipliers = plan.multipliers()
    logger.info(
        "Transplanted %d tensors (layers 1..%d) from %s into %s",
        copied,
        plan.n_transfer_layers,
        source.spec.name,
        target_spec.name,
    )
    return network
