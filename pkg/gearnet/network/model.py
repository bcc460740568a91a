"""Instantiated networks: parameters, forward/backward passes, prediction and evaluation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from gearnet.dataset import LabeledDataset
from gearnet.errors import ConfigurationError
from gearnet.nn import layers as L
from gearnet.nn.tensor import DTYPE, Tensor, batched, unbatched
from gearnet.network.spec import (
    ConvLayer,
    DenseLayer,
    DropoutLayer,
    LayerConfig,
    LRNLayer,
    MaxPoolLayer,
    NetworkSpec,
    ReluLayer,
    SoftmaxLayer,
)

logger = logging.getLogger(__name__)

Mode = Literal["train", "eval"]

EVAL_CHUNK = 64


def param_name(index: int, kind: str) -> str:
    return f"layer{index:02d}.{kind}"


def layer_index_of(name: str) -> int:
    return int(name.split(".", 1)[0].removeprefix("layer"))


def mask_seed(dropout_seed: int, layer_index: int) -> int:
    return int(np.random.SeedSequence([dropout_seed, layer_index]).generate_state(1)[0])


def _lrn_spec(layer: LRNLayer) -> L.LRNSpec:
    return L.LRNSpec(layer.channel_span, layer.bias_k, layer.scale_alpha, layer.exponent_beta)


@dataclass
class _TapeEntry:
    index: int
    layer: LayerConfig
    inputs: Tensor
    mask: Tensor | None = None


class Network:
    """A NetworkSpec with instantiated parameters."""

    def __init__(
        self,
        spec: NetworkSpec,
        parameters: dict[str, Tensor],
        mode: Mode = "eval",
    ):
        self.spec = spec
        self.layers = spec.layers()
        self.shapes = spec.shapes()
        self.parameters = parameters
        self.mode: Mode = mode
        self.lr_multipliers: dict[int, float] = {}
        self._check_parameters()

    # --- structure -------------------------------------------------------------

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    @staticmethod
    def expected_shapes_for(spec: NetworkSpec) -> dict[str, tuple[int, ...]]:
        shapes: dict[str, tuple[int, ...]] = {}
        for i, layer in enumerate(spec.layers(), start=1):
            if isinstance(layer, ConvLayer):
                shapes[param_name(i, "weights")] = (
                    layer.filter_height, layer.filter_width, layer.in_channels, layer.num_filters,
                )
                shapes[param_name(i, "bias")] = (layer.num_filters,)
            elif isinstance(layer, DenseLayer):
                shapes[param_name(i, "weights")] = (layer.out_features, layer.in_features)
                shapes[param_name(i, "bias")] = (layer.out_features,)
        return shapes

    def parameter_count(self, index: int) -> int:
        if not 1 <= index <= self.layer_count:
            raise ConfigurationError(f"layer index {index} outside 1..{self.layer_count}")
        return sum(
            int(p.size) for name, p in self.parameters.items() if layer_index_of(name) == index
        )

    def _check_parameters(self) -> None:
        expected = self.expected_shapes_for(self.spec)
        if set(expected) != set(self.parameters):
            missing = sorted(set(expected) - set(self.parameters))
            extra = sorted(set(self.parameters) - set(expected))
            raise ConfigurationError(
                f"{self.spec.name}: parameter names disagree with spec "
                f"(missing {missing}, unexpected {extra})"
            )
        for name, shape in expected.items():
            if self.parameters[name].shape != shape:
                raise ConfigurationError(
                    f"{self.spec.name}: {name} has shape {self.parameters[name].shape}, "
                    f"spec requires {shape}"
                )

    def set_mode(self, mode: Mode) -> None:
        self.mode = mode

    def lr_multiplier(self, index: int) -> float:
        return self.lr_multipliers.get(index, 1.0)

    # --- forward ---------------------------------------------------------------

    def _conv_spec(self, index: int, layer: ConvLayer) -> L.ConvSpec:
        return L.ConvSpec.from_weights(
            self.parameters[param_name(index, "weights")],
            self.parameters[param_name(index, "bias")],
            layer.stride,
            layer.padding,
        )

    def _dense_spec(self, index: int) -> L.DenseSpec:
        return L.DenseSpec.from_weights(
            self.parameters[param_name(index, "weights")],
            self.parameters[param_name(index, "bias")],
        )

    def _apply(
        self, index: int, layer: LayerConfig, x: Tensor, dropout_seed: int
    ) -> tuple[Tensor, Tensor | None]:
        if isinstance(layer, ConvLayer):
            return L.conv_forward(x, self._conv_spec(index, layer)), None
        if isinstance(layer, ReluLayer):
            return L.relu_forward(x), None
        if isinstance(layer, LRNLayer):
            return L.lrn_forward(x, _lrn_spec(layer)), None
        if isinstance(layer, MaxPoolLayer):
            pool = L.MaxPoolSpec(layer.window_height, layer.window_width, layer.stride)
            return L.maxpool_forward(x, pool), None
        if isinstance(layer, DenseLayer):
            return L.dense_forward(x.reshape(x.shape[0], -1), self._dense_spec(index)), None
        if isinstance(layer, DropoutLayer):
            spec = L.DropoutSpec(layer.rate, self.mode, mask_seed(dropout_seed, index))
            return L.dropout_forward(x, spec)
        if isinstance(layer, SoftmaxLayer):
            return L.softmax_forward(x), None
        return x, None

    def _check_input(self, x: Tensor) -> tuple[Tensor, bool]:
        xb, added = batched(np.asarray(x, dtype=DTYPE), 3)
        if xb.shape[1:] != tuple(self.spec.input_shape):
            raise ConfigurationError(
                f"{self.spec.name}: input shape {xb.shape[1:]} does not match "
                f"{tuple(self.spec.input_shape)}"
            )
        return xb, added

    def run_layers(
        self,
        x: Tensor,
        *,
        stop_before_softmax: bool = False,
        dropout_seed: int = 0,
        tape: list[_TapeEntry] | None = None,
        activations: list[Tensor] | None = None,
    ) -> Tensor:
        """Push a batch through the layers in order, optionally recording inputs and outputs."""
        h = x
        for index, layer in enumerate(self.layers, start=1):
            if stop_before_softmax and isinstance(layer, SoftmaxLayer):
                break
            out, mask = self._apply(index, layer, h, dropout_seed)
            if tape is not None:
                tape.append(_TapeEntry(index, layer, h, mask))
            if activations is not None:
                activations.append(out)
            h = out
        return h

    def probabilities(self, x: Tensor, dropout_seed: int = 0) -> Tensor:
        xb, added = self._check_input(x)
        return unbatched(self.run_layers(xb, dropout_seed=dropout_seed), added)

    def logits(self, x: Tensor, dropout_seed: int = 0) -> Tensor:
        xb, added = self._check_input(x)
        out = self.run_layers(xb, stop_before_softmax=True, dropout_seed=dropout_seed)
        return unbatched(out, added)

    def forward_train(self, x: Tensor, dropout_seed: int) -> tuple[Tensor, list[_TapeEntry]]:
        """Logits for a batch plus the tape needed by :meth:`backward`."""
        xb, _ = self._check_input(x)
        tape: list[_TapeEntry] = []
        logits = self.run_layers(xb, stop_before_softmax=True, dropout_seed=dropout_seed, tape=tape)
        return logits, tape

    def activations(self, x: Tensor) -> list[Tensor]:
        """Output of every layer for one sample, in layer order."""
        xb, added = self._check_input(x)
        outs: list[Tensor] = []
        self.run_layers(xb, activations=outs)
        return [unbatched(o, added) for o in outs]

    # --- backward --------------------------------------------------------------

    def backward(self, tape: list[_TapeEntry], grad_logits: Tensor) -> dict[str, Tensor]:
        """Gradients of every parameter given d(loss)/d(logits) for the taped batch."""
        grads: dict[str, Tensor] = {}
        g = grad_logits
        for entry in reversed(tape):
            layer, x, i = entry.layer, entry.inputs, entry.index
            if isinstance(layer, ConvLayer):
                g, grads[param_name(i, "weights")], grads[param_name(i, "bias")] = L.conv_backward(
                    x, self._conv_spec(i, layer), g
                )
            elif isinstance(layer, ReluLayer):
                g = L.relu_backward(x, g)
            elif isinstance(layer, LRNLayer):
                g = L.lrn_backward(x, _lrn_spec(layer), g)
            elif isinstance(layer, MaxPoolLayer):
                pool = L.MaxPoolSpec(layer.window_height, layer.window_width, layer.stride)
                g = L.maxpool_backward(x, pool, g)
            elif isinstance(layer, DenseLayer):
                flat = x.reshape(x.shape[0], -1)
                gx, grads[param_name(i, "weights")], grads[param_name(i, "bias")] = (
                    L.dense_backward(flat, self._dense_spec(i), g)
                )
                g = gx.reshape(x.shape)
            elif isinstance(layer, DropoutLayer):
                assert entry.mask is not None
                g = L.dropout_backward(g, entry.mask)
        return grads


# --- module-level operations -----------------------------------------------------


def init_parameters(spec: NetworkSpec, init_seed: int) -> dict[str, Tensor]:
    """He-scaled Gaussian weights (std sqrt(2/fan_in)) and zero biases, in layer order."""
    rng = np.random.default_rng(init_seed)
    params: dict[str, Tensor] = {}
    for i, layer in enumerate(spec.layers(), start=1):
        if isinstance(layer, ConvLayer):
            shape = (layer.filter_height, layer.filter_width, layer.in_channels, layer.num_filters)
            fan_in = layer.filter_height * layer.filter_width * layer.in_channels
            params[param_name(i, "weights")] = rng.standard_normal(shape) * np.sqrt(2.0 / fan_in)
            params[param_name(i, "bias")] = np.zeros(layer.num_filters, dtype=DTYPE)
        elif isinstance(layer, DenseLayer):
            shape = (layer.out_features, layer.in_features)
            params[param_name(i, "weights")] = rng.standard_normal(shape) * np.sqrt(
                2.0 / layer.in_features
            )
            params[param_name(i, "bias")] = np.zeros(layer.out_features, dtype=DTYPE)
    return params


def build_network(spec: NetworkSpec, init_seed: int = 0) -> Network:
    spec.validate_composition()
    network = Network(spec, init_parameters(spec, init_seed))
    logger.debug(
        "Built %s: %d layers, %d parameters",
        spec.name,
        network.layer_count,
        sum(int(p.size) for p in network.parameters.values()),
    )
    return network


def forward(network: Network, x: Tensor) -> Tensor:
    """Class probabilities for one input [H, W, C] (or a batch)."""
    return network.probabilities(x)


def predict(network: Network, x: Tensor) -> int:
    """Argmax of the forward probabilities; ties go to the lowest class index."""
    return int(np.argmax(forward(network, x)))


def evaluate_accuracy(network: Network, dataset: LabeledDataset) -> float:
    """Fraction of samples whose prediction equals the label, computed in eval mode."""
    if len(dataset) == 0:
        raise ConfigurationError("cannot evaluate accuracy on an empty dataset")
    previous = network.mode
    network.set_mode("eval")
    try:
        correct = 0
        for start in range(0, len(dataset), EVAL_CHUNK):
            stop = start + EVAL_CHUNK
            probs = network.probabilities(dataset.images[start:stop])
            correct += int(np.sum(probs.argmax(axis=1) == dataset.labels[start:stop]))
    finally:
        network.set_mode(previous)
    return correct / len(dataset)


def dump_feature_maps(network: Network, x: Tensor, out_dir: Path | str) -> list[Path]:
    """Write the post-ReLU activation of every convolution stage, one tensor file each."""
    from gearnet.network.checkpoint import write_tensor_file

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    previous = network.mode
    network.set_mode("eval")
    try:
        outs = network.activations(x)
    finally:
        network.set_mode(previous)

    written: list[Path] = []
    conv_number = 0
    for i, layer in enumerate(network.layers, start=1):
        if not isinstance(layer, ConvLayer):
            continue
        conv_number += 1
        follows_relu = i < network.layer_count and isinstance(network.layers[i], ReluLayer)
        fmap = outs[i] if follows_relu else outs[i - 1]
        name = f"conv{conv_number}.layer{(i + 1) if follows_relu else i:02d}"
        path = out_dir / f"{name}.gnt"
        write_tensor_file(path, name, fmap)
        written.append(path)
        logger.info("Feature map %s %s -> %s", name, fmap.shape, path)
    return written
