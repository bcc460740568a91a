"""Tensors, layer mechanics and the loss function."""

from gearnet.nn.layers import (
    ConvSpec,
    DenseSpec,
    DropoutSpec,
    LRNSpec,
    MaxPoolSpec,
    conv_backward,
    conv_forward,
    dense_backward,
    dense_forward,
    dropout_backward,
    dropout_forward,
    lrn_backward,
    lrn_forward,
    maxpool_backward,
    maxpool_forward,
    relu_backward,
    relu_forward,
    softmax_forward,
)
from gearnet.nn.loss import LossConfig, cross_entropy_loss, softmax_cross_entropy_backward
from gearnet.nn.tensor import Tensor, as_tensor

__all__ = [
    "ConvSpec",
    "DenseSpec",
    "DropoutSpec",
    "LRNSpec",
    "LossConfig",
    "MaxPoolSpec",
    "Tensor",
    "as_tensor",
    "conv_backward",
    "conv_forward",
    "cross_entropy_loss",
    "dense_backward",
    "dense_forward",
    "dropout_backward",
    "dropout_forward",
    "lrn_backward",
    "lrn_forward",
    "maxpool_backward",
    "maxpool_forward",
    "relu_backward",
    "relu_forward",
    "softmax_cross_entropy_backward",
    "softmax_forward",
]
