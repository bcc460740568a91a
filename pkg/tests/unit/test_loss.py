"""Tests for gearnet.nn.loss — cross-entropy, weight decay and the fused gradient."""

from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from gearnet.errors import ConfigurationError
from gearnet.nn.loss import (
    LossConfig,
    cross_entropy_loss,
    softmax_cross_entropy_backward,
    squared_norm,
    weight_decay_gradient,
)


def test_certain_prediction_has_zero_loss() -> None:
    p = np.zeros(9)
    p[4] = 1.0
    assert cross_entropy_loss(p, 4, [], LossConfig(gamma=0.0)) == 0.0


def test_uniform_prediction() -> None:
    loss = cross_entropy_loss(np.full(9, 1 / 9), 0, [], LossConfig(gamma=0.0))
    assert loss == pytest.approx(math.log(9), abs=1e-12)


def test_decay_term_is_additive() -> None:
    p = np.full(9, 1 / 9)
    params = [np.array([1.0, 1.0]), np.array([[1.0, 1.0]])]
    assert squared_norm(params) == 4.0
    base = cross_entropy_loss(p, 2, params, LossConfig(gamma=0.0))
    decayed = cross_entropy_loss(p, 2, params, LossConfig(gamma=1e-3))
    assert decayed - base == pytest.approx(0.004, abs=1e-15)


def test_zero_probability_is_floored() -> None:
    p = np.array([1.0, 0.0, 0.0])
    loss = cross_entropy_loss(p, 1, [], LossConfig(gamma=0.0, num_classes=3))
    assert loss == pytest.approx(-math.log(1e-15))


def test_batch_loss_is_mean() -> None:
    probs = np.array([[0.5, 0.5], [0.25, 0.75]])
    loss = cross_entropy_loss(probs, np.array([0, 1]), [], LossConfig(0.0, 2))
    assert loss == pytest.approx((math.log(2) - math.log(0.75)) / 2)


def test_label_out_of_range() -> None:
    with pytest.raises(ConfigurationError, match="label"):
        cross_entropy_loss(np.full(9, 1 / 9), 9, [], LossConfig())


def test_class_count_mismatch() -> None:
    with pytest.raises(ConfigurationError, match="classes"):
        cross_entropy_loss(np.full(4, 0.25), 0, [], LossConfig())


def test_fused_gradient_single_sample() -> None:
    p = np.array([0.2, 0.5, 0.3])
    assert_allclose(softmax_cross_entropy_backward(p, 1), [0.2, -0.5, 0.3], atol=1e-15)


def test_fused_gradient_is_batch_averaged() -> None:
    p = np.array([[0.2, 0.8], [0.6, 0.4]])
    grad = softmax_cross_entropy_backward(p, np.array([1, 0]))
    assert_allclose(grad, [[0.1, -0.1], [-0.2, 0.2]], atol=1e-15)


def test_weight_decay_gradient() -> None:
    assert_allclose(weight_decay_gradient(np.array([1.0, -2.0]), 0.5), [1.0, -2.0])


def test_negative_gamma_rejected() -> None:
    with pytest.raises(ConfigurationError):
        LossConfig(gamma=-1.0)
