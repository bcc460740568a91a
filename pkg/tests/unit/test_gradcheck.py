"""Tests for gearnet.nn.gradcheck and gearnet.network.gradcheck — finite-difference agreement."""

from __future__ import annotations

import numpy as np
import pytest

from gearnet.errors import ConfigurationError
from gearnet.network.gradcheck import check_network_gradients
from gearnet.network.model import build_network
from gearnet.network.spec import get_spec
from gearnet.nn.gradcheck import (
    LAYER_KINDS,
    check_layer_gradients,
    numerical_gradient,
    relative_error,
)


@pytest.mark.parametrize("kind", LAYER_KINDS)
def test_layer_gradients_across_random_shapes(kind: str) -> None:
    rng = np.random.default_rng(2024)
    for _ in range(20):
        errors = check_layer_gradients(kind, rng, eps=1e-5)
        assert errors
        assert max(errors.values()) < 1e-4, errors


def test_unknown_kind_rejected() -> None:
    with pytest.raises(ConfigurationError, match="unknown layer kind"):
        check_layer_gradients("attention", np.random.default_rng(0))


def test_numerical_gradient_of_quadratic() -> None:
    x = np.array([1.0, -2.0, 3.0])
    grad = numerical_gradient(lambda: float(np.sum(x**2)), x)
    np.testing.assert_allclose(grad, 2 * x, rtol=1e-8)
    np.testing.assert_array_equal(x, [1.0, -2.0, 3.0])


def test_relative_error_of_identical_zero_vectors() -> None:
    assert relative_error(np.zeros(3), np.zeros(3)) == 0.0


def test_relative_error_symmetric() -> None:
    a, b = np.array([1.0, 2.0]), np.array([1.0, 2.5])
    assert relative_error(a, b) == relative_error(b, a)


def test_network_gradients_mini() -> None:
    spec = get_spec("mini")
    network = build_network(spec, init_seed=3)
    network.set_mode("train")
    rng = np.random.default_rng(5)
    x = rng.uniform(0.0, 1.0, spec.input_shape)
    errors = check_network_gradients(network, x, label=4, coords_per_tensor=3, rng=rng)
    assert set(errors) == set(network.parameters)
    assert max(errors.values()) < 1e-3, errors
    assert network.mode == "train"
