"""Declarative network specifications and the architecture registry.

A NetworkSpec is an ordered list of stages, each an ordered list of layer
configs. Layers are numbered 1..m across stages. Specs are pydantic models so
they embed into checkpoints as JSON.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Annotated, Literal, Union

from pydantic import BaseModel, Field

from gearnet.errors import ConfigurationError
from gearnet.nn.layers import MaxPoolSpec, output_size


class ConvLayer(BaseModel):
    kind: Literal["conv"] = "conv"
    filter_height: int = Field(ge=1)
    filter_width: int = Field(ge=1)
    in_channels: int = Field(ge=1)
    num_filters: int = Field(ge=1)
    stride: int = Field(1, ge=1)
    padding: int = Field(0, ge=0)


class ReluLayer(BaseModel):
    kind: Literal["relu"] = "relu"


class LRNLayer(BaseModel):
    kind: Literal["lrn"] = "lrn"
    channel_span: int = Field(5, ge=1)
    bias_k: float = 2.0
    scale_alpha: float = 1e-4
    exponent_beta: float = 0.75


class MaxPoolLayer(BaseModel):
    kind: Literal["maxpool"] = "maxpool"
    window_height: int = Field(ge=1)
    window_width: int = Field(ge=1)
    stride: int = Field(ge=1)


class DenseLayer(BaseModel):
    kind: Literal["dense"] = "dense"
    in_features: int = Field(ge=1)
    out_features: int = Field(ge=1)


class DropoutLayer(BaseModel):
    kind: Literal["dropout"] = "dropout"
    rate: float = Field(0.5, ge=0, lt=1)


class SoftmaxLayer(BaseModel):
    kind: Literal["softmax"] = "softmax"


class ClassificationLayer(BaseModel):
    """Argmax over the softmax output; carries the cross-entropy objective, no parameters."""

    kind: Literal["classification"] = "classification"


LayerConfig = Annotated[
    Union[
        ConvLayer,
        ReluLayer,
        LRNLayer,
        MaxPoolLayer,
        DenseLayer,
        DropoutLayer,
        SoftmaxLayer,
        ClassificationLayer,
    ],
    Field(discriminator="kind"),
]

PARAMETERIZED = ("conv", "dense")


class NetworkSpec(BaseModel):
    name: str
    input_shape: tuple[int, int, int]
    stages: list[list[LayerConfig]]
    num_classes: int = Field(ge=1)

    def layers(self) -> list[LayerConfig]:
        return [layer for stage in self.stages for layer in stage]

    def shapes(self) -> list[tuple[int, ...]]:
        """Output shape after every layer; raises naming the first layer that does not compose."""
        shape: tuple[int, ...] = tuple(self.input_shape)
        out: list[tuple[int, ...]] = []
        for index, layer in enumerate(self.layers(), start=1):
            try:
                shape = _layer_output_shape(layer, shape)
            except ConfigurationError as e:
                raise ConfigurationError(
                    f"{self.name}: layer {index} ({layer.kind}) does not compose: {e}"
                ) from None
            out.append(shape)
        if out and out[-1] != (self.num_classes,):
            raise ConfigurationError(
                f"{self.name}: final output {out[-1]} does not match num_classes "
                f"{self.num_classes}"
            )
        return out

    def validate_composition(self) -> None:
        self.shapes()


def _layer_output_shape(layer: LayerConfig, shape: tuple[int, ...]) -> tuple[int, ...]:
    if isinstance(layer, ConvLayer):
        if len(shape) != 3:
            raise ConfigurationError(f"conv expects an [H, W, C] input, got {shape}")
        h, w, c = shape
        if c != layer.in_channels:
            raise ConfigurationError(f"declared in_channels {layer.in_channels}, input has {c}")
        return (
            output_size(h, layer.filter_height, layer.stride, layer.padding, "height"),
            output_size(w, layer.filter_width, layer.stride, layer.padding, "width"),
            layer.num_filters,
        )
    if isinstance(layer, MaxPoolLayer):
        if len(shape) != 3:
            raise ConfigurationError(f"max pooling expects an [H, W, C] input, got {shape}")
        pool = MaxPoolSpec(layer.window_height, layer.window_width, layer.stride)
        return pool.output_shape(*shape)
    if isinstance(layer, LRNLayer):
        if len(shape) != 3:
            raise ConfigurationError(f"LRN expects an [H, W, C] input, got {shape}")
        if layer.channel_span % 2 == 0:
            raise ConfigurationError(f"LRN channel_span must be odd, got {layer.channel_span}")
        return shape
    if isinstance(layer, DenseLayer):
        flat = 1
        for d in shape:
            flat *= d
        if flat != layer.in_features:
            raise ConfigurationError(
                f"declared in_features {layer.in_features}, flattened input has {flat}"
            )
        return (layer.out_features,)
    if isinstance(layer, SoftmaxLayer | ClassificationLayer):
        if len(shape) != 1:
            raise ConfigurationError(f"{layer.kind} expects a vector input, got {shape}")
        return shape
    return shape


# --- architecture registry ----------------------------------------------------


def _conv(p: int, c: int, k: int, stride: int = 1, padding: int = 0) -> ConvLayer:
    return ConvLayer(
        filter_height=p, filter_width=p, in_channels=c, num_filters=k, stride=stride,
        padding=padding,
    )


def _pool() -> MaxPoolLayer:
    return MaxPoolLayer(window_height=3, window_width=3, stride=2)


def _head(in_features: int, num_classes: int) -> list[LayerConfig]:
    return [
        DenseLayer(in_features=in_features, out_features=num_classes),
        SoftmaxLayer(),
        ClassificationLayer(),
    ]


def paper24_spec(num_classes: int = 9) -> NetworkSpec:
    """The 24-layer, 8-stage classifier on 227×227×3 inputs (6×6×256 before the dense head)."""
    return NetworkSpec(
        name="paper-24",
        input_shape=(227, 227, 3),
        num_classes=num_classes,
        stages=[
            [_conv(11, 3, 96, stride=4), ReluLayer(), LRNLayer(), _pool()],
            [_conv(5, 96, 256, padding=2), ReluLayer(), LRNLayer(), _pool()],
            [_conv(3, 256, 384, padding=1), ReluLayer()],
            [_conv(3, 384, 384, padding=1), ReluLayer()],
            [_conv(3, 384, 256, padding=1), ReluLayer(), _pool()],
            [DenseLayer(in_features=6 * 6 * 256, out_features=4096), ReluLayer(), DropoutLayer()],
            [DenseLayer(in_features=4096, out_features=4096), ReluLayer(), DropoutLayer()],
            _head(4096, num_classes),
        ],
    )


def local_cnn_spec(num_classes: int = 9) -> NetworkSpec:
    """Stages 1, 2 and 8 of paper-24, trained from scratch."""
    full = paper24_spec(num_classes)
    return NetworkSpec(
        name="local-cnn",
        input_shape=full.input_shape,
        num_classes=num_classes,
        stages=[full.stages[0], full.stages[1], _head(13 * 13 * 256, num_classes)],
    )


def mini_spec(num_classes: int = 9) -> NetworkSpec:
    """Desk-scale counterpart of paper-24: same 24-layer roster on 32×32×3 inputs."""
    return NetworkSpec(
        name="mini",
        input_shape=(32, 32, 3),
        num_classes=num_classes,
        stages=[
            [_conv(5, 3, 8, padding=2), ReluLayer(), LRNLayer(), _pool()],
            [_conv(3, 8, 16, padding=1), ReluLayer(), LRNLayer(), _pool()],
            [_conv(3, 16, 32, padding=1), ReluLayer()],
            [_conv(3, 32, 32, padding=1), ReluLayer()],
            [_conv(3, 32, 16, padding=1), ReluLayer(), _pool()],
            [DenseLayer(in_features=3 * 3 * 16, out_features=64), ReluLayer(), DropoutLayer()],
            [DenseLayer(in_features=64, out_features=64), ReluLayer(), DropoutLayer()],
            _head(64, num_classes),
        ],
    )


def mini_local_spec(num_classes: int = 9) -> NetworkSpec:
    full = mini_spec(num_classes)
    return NetworkSpec(
        name="mini-local",
        input_shape=full.input_shape,
        num_classes=num_classes,
        stages=[full.stages[0], full.stages[1], _head(7 * 7 * 16, num_classes)],
    )


ARCHITECTURES: dict[str, Callable[[int], NetworkSpec]] = {
    "paper-24": paper24_spec,
    "local-cnn": local_cnn_spec,
    "mini": mini_spec,
    "mini-local": mini_local_spec,
}


def get_spec(name: str, num_classes: int = 9) -> NetworkSpec:
    try:
        factory = ARCHITECTURES[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown architecture {name!r}; choose from {', '.join(sorted(ARCHITECTURES))}"
        ) from None
    spec = factory(num_classes)
    spec.validate_composition()
    return spec
