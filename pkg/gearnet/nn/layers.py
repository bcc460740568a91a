"""Forward and backward mechanics for every layer type of the classifier.

All operations are pure functions over numpy arrays. Spatial layers take a
single sample [H, W, C] or a batch [N, H, W, C]; dense takes [F] or [N, F].
Backward functions return gradients of ``sum(grad_out * forward(...))``;
parameter gradients are summed over the batch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from gearnet.errors import ConfigurationError
from gearnet.nn.tensor import DTYPE, Tensor, batched, unbatched


def output_size(size: int, window: int, stride: int, padding: int = 0, axis: str = "") -> int:
    """floor((size + 2*padding - window) / stride) + 1, rejected when below one."""
    out = (size + 2 * padding - window) // stride + 1
    if out < 1:
        raise ConfigurationError(
            f"window {window} with stride {stride} and padding {padding} does not fit "
            f"input {axis or 'dimension'} {size}"
        )
    return out


# --- convolution ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConvSpec:
    filter_height: int
    filter_width: int
    in_channels: int
    num_filters: int
    weights: Tensor
    bias: Tensor
    stride: int = 1
    padding: int = 0

    def __post_init__(self) -> None:
        expected = (self.filter_height, self.filter_width, self.in_channels, self.num_filters)
        if self.weights.shape != expected:
            raise ConfigurationError(
                f"conv weights have shape {self.weights.shape}, expected {expected}"
            )
        if self.bias.shape != (self.num_filters,):
            raise ConfigurationError(
                f"conv bias has shape {self.bias.shape}, expected ({self.num_filters},)"
            )
        if self.stride < 1 or self.padding < 0:
            raise ConfigurationError("conv stride must be >= 1 and padding >= 0")

    @classmethod
    def from_weights(
        cls, weights: Tensor, bias: Tensor, stride: int = 1, padding: int = 0
    ) -> ConvSpec:
        p, q, c, k = weights.shape
        return cls(p, q, c, k, weights, bias, stride, padding)

    def output_shape(self, height: int, width: int) -> tuple[int, int, int]:
        return (
            output_size(height, self.filter_height, self.stride, self.padding, "height"),
            output_size(width, self.filter_width, self.stride, self.padding, "width"),
            self.num_filters,
        )


def _conv_windows(x: Tensor, spec: ConvSpec) -> Tensor:
    """Strided patches of the zero-padded batch, shaped (N, H', W', C, p, q)."""
    _, h, w, _ = x.shape
    ho, wo, _ = spec.output_shape(h, w)
    pad = spec.padding
    padded = np.pad(x, ((0, 0), (pad, pad), (pad, pad), (0, 0))) if pad else x
    windows = sliding_window_view(padded, (spec.filter_height, spec.filter_width), axis=(1, 2))
    return windows[:, :: spec.stride, :: spec.stride][:, :ho, :wo]


def _check_channels(x: Tensor, spec: ConvSpec) -> None:
    if x.shape[-1] != spec.in_channels:
        raise ConfigurationError(
            f"conv input channels {x.shape[-1]} do not match filter in_channels "
            f"{spec.in_channels}"
        )


def conv_forward(x: Tensor, spec: ConvSpec) -> Tensor:
    """Cross-correlate the padded input with each filter at every strided location."""
    xb, added = batched(x, 3)
    _check_channels(xb, spec)
    windows = _conv_windows(xb, spec)
    kernel = spec.weights.transpose(2, 0, 1, 3)
    out = np.tensordot(windows, kernel, axes=([3, 4, 5], [0, 1, 2])) + spec.bias
    return unbatched(out, added)


def conv_backward(x: Tensor, spec: ConvSpec, grad_out: Tensor) -> tuple[Tensor, Tensor, Tensor]:
    """Return (grad_input, grad_weights, grad_bias)."""
    xb, added = batched(x, 3)
    _check_channels(xb, spec)
    n, h, w, c = xb.shape
    ho, wo, k = spec.output_shape(h, w)
    gb = grad_out[np.newaxis, ...] if added else grad_out
    if gb.shape != (n, ho, wo, k):
        raise ConfigurationError(
            f"conv grad_out has shape {grad_out.shape}, expected {(ho, wo, k)}"
        )

    windows = _conv_windows(xb, spec)
    grad_weights = np.tensordot(windows, gb, axes=([0, 1, 2], [0, 1, 2])).transpose(1, 2, 0, 3)
    grad_bias = gb.sum(axis=(0, 1, 2))

    cols = np.tensordot(gb, spec.weights, axes=([3], [3]))  # (N, H', W', p, q, C)
    s, pad = spec.stride, spec.padding
    grad_padded = np.zeros((n, h + 2 * pad, w + 2 * pad, c), dtype=DTYPE)
    row_stop = s * (ho - 1) + 1
    col_stop = s * (wo - 1) + 1
    for i in range(spec.filter_height):
        for j in range(spec.filter_width):
            grad_padded[:, i : i + row_stop : s, j : j + col_stop : s, :] += cols[:, :, :, i, j, :]
    grad_input = grad_padded[:, pad : pad + h, pad : pad + w, :]
    return unbatched(np.ascontiguousarray(grad_input), added), grad_weights, grad_bias


# --- ReLU --------------------------------------------------------------------


def relu_forward(x: Tensor) -> Tensor:
    return np.maximum(x, 0.0)


def relu_backward(x: Tensor, grad_out: Tensor) -> Tensor:
    return grad_out * (x > 0.0)


# --- max pooling ---------------------------------------------------------------


@dataclass(frozen=True)
class MaxPoolSpec:
    window_height: int
    window_width: int
    stride: int

    def output_shape(self, height: int, width: int, channels: int) -> tuple[int, int, int]:
        if self.window_height > height or self.window_width > width:
            raise ConfigurationError(
                f"pool window {self.window_height}x{self.window_width} is larger than "
                f"input {height}x{width}"
            )
        return (
            output_size(height, self.window_height, self.stride, 0, "height"),
            output_size(width, self.window_width, self.stride, 0, "width"),
            channels,
        )


def _pool_windows(x: Tensor, spec: MaxPoolSpec) -> Tensor:
    _, h, w, c = x.shape
    ho, wo, _ = spec.output_shape(h, w, c)
    windows = sliding_window_view(x, (spec.window_height, spec.window_width), axis=(1, 2))
    return windows[:, :: spec.stride, :: spec.stride][:, :ho, :wo]


def maxpool_forward(x: Tensor, spec: MaxPoolSpec) -> Tensor:
    xb, added = batched(x, 3)
    out = _pool_windows(xb, spec).max(axis=(4, 5))
    return unbatched(out, added)


def maxpool_backward(x: Tensor, spec: MaxPoolSpec, grad_out: Tensor) -> Tensor:
    """Route each output gradient to the first maximum of its window."""
    xb, added = batched(x, 3)
    gb = grad_out[np.newaxis, ...] if added else grad_out
    n, _, _, c = xb.shape
    windows = _pool_windows(xb, spec)
    _, ho, wo = windows.shape[:3]
    if gb.shape != (n, ho, wo, c):
        raise ConfigurationError(
            f"maxpool grad_out has shape {grad_out.shape}, expected {(ho, wo, c)}"
        )
    flat = windows.reshape(n, ho, wo, c, spec.window_height * spec.window_width)
    di, dj = np.divmod(flat.argmax(axis=-1), spec.window_width)
    rows = np.arange(ho)[None, :, None, None] * spec.stride + di
    cols = np.arange(wo)[None, None, :, None] * spec.stride + dj
    batch_idx = np.arange(n)[:, None, None, None]
    chan_idx = np.arange(c)[None, None, None, :]
    grad_input = np.zeros_like(xb)
    np.add.at(grad_input, (batch_idx, rows, cols, chan_idx), gb)
    return unbatched(grad_input, added)


# --- local response normalization ---------------------------------------------


@dataclass(frozen=True)
class LRNSpec:
    channel_span: int = 5
    bias_k: float = 2.0
    scale_alpha: float = 1e-4
    exponent_beta: float = 0.75

    def __post_init__(self) -> None:
        if self.channel_span < 1 or self.channel_span % 2 == 0:
            raise ConfigurationError(
                f"LRN channel_span must be a positive odd integer, got {self.channel_span}"
            )


def _channel_window_sum(v: Tensor, span: int) -> Tensor:
    """Sum over ``span`` channels centred at each channel, clipped at the edges."""
    half = span // 2
    pad_width = [(0, 0)] * (v.ndim - 1) + [(half, half)]
    cs = np.cumsum(np.pad(v, pad_width), axis=-1)
    cs = np.concatenate([np.zeros_like(cs[..., :1]), cs], axis=-1)
    return cs[..., span:] - cs[..., :-span]


def _lrn_denominator(x: Tensor, spec: LRNSpec) -> Tensor:
    return spec.bias_k + spec.scale_alpha * _channel_window_sum(x * x, spec.channel_span)


def lrn_forward(x: Tensor, spec: LRNSpec) -> Tensor:
    return x * _lrn_denominator(x, spec) ** (-spec.exponent_beta)


def lrn_backward(x: Tensor, spec: LRNSpec, grad_out: Tensor) -> Tensor:
    den = _lrn_denominator(x, spec)
    beta = spec.exponent_beta
    t = grad_out * x * den ** (-beta - 1.0)
    return grad_out * den ** (-beta) - 2.0 * spec.scale_alpha * beta * x * _channel_window_sum(
        t, spec.channel_span
    )


# --- fully connected -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DenseSpec:
    in_features: int
    out_features: int
    weights: Tensor
    bias: Tensor

    def __post_init__(self) -> None:
        if self.weights.shape != (self.out_features, self.in_features):
            raise ConfigurationError(
                f"dense weights have shape {self.weights.shape}, expected "
                f"{(self.out_features, self.in_features)}"
            )
        if self.bias.shape != (self.out_features,):
            raise ConfigurationError(
                f"dense bias has shape {self.bias.shape}, expected ({self.out_features},)"
            )

    @classmethod
    def from_weights(cls, weights: Tensor, bias: Tensor) -> DenseSpec:
        out_features, in_features = weights.shape
        return cls(in_features, out_features, weights, bias)


def dense_forward(x: Tensor, spec: DenseSpec) -> Tensor:
    xb, added = batched(x, 1)
    if xb.shape[1] != spec.in_features:
        raise ConfigurationError(
            f"dense input length {xb.shape[1]} does not match in_features {spec.in_features}"
        )
    return unbatched(xb @ spec.weights.T + spec.bias, added)


def dense_backward(x: Tensor, spec: DenseSpec, grad_out: Tensor) -> tuple[Tensor, Tensor, Tensor]:
    xb, added = batched(x, 1)
    gb, _ = batched(grad_out, 1)
    if gb.shape != (xb.shape[0], spec.out_features):
        raise ConfigurationError(
            f"dense grad_out has shape {grad_out.shape}, expected ({spec.out_features},)"
        )
    grad_input = gb @ spec.weights
    return unbatched(grad_input, added), gb.T @ xb, gb.sum(axis=0)


# --- dropout -----------------------------------------------------------------------


@dataclass(frozen=True)
class DropoutSpec:
    rate: float = 0.5
    mode: Literal["train", "eval"] = "train"
    mask_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.rate < 1.0:
            raise ConfigurationError(f"dropout rate must lie in [0, 1), got {self.rate}")


def dropout_forward(x: Tensor, spec: DropoutSpec) -> tuple[Tensor, Tensor]:
    """Inverted dropout; the returned mask already carries the 1/(1-rate) scale."""
    if spec.mode == "eval":
        return x.copy(), np.ones_like(x)
    rng = np.random.default_rng(spec.mask_seed)
    keep = rng.random(x.shape) >= spec.rate
    mask = keep / (1.0 - spec.rate)
    return x * mask, mask


def dropout_backward(grad_out: Tensor, mask: Tensor) -> Tensor:
    return grad_out * mask


# --- softmax ---------------------------------------------------------------------


def softmax_forward(logits: Tensor) -> Tensor:
    """Softmax over the last axis with max subtraction."""
    if logits.shape[-1] < 2:
        raise ConfigurationError("softmax needs at least two classes")
    shifted = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)
