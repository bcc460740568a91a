"""Tests for gearnet.optim.sgd — velocity-form momentum, multipliers and freezing."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from gearnet.errors import ConfigurationError
from gearnet.optim.sgd import OptimizerConfig, SGDMomentum, VelocityState, sgd_momentum_step


def _scalar(value: float) -> dict[str, np.ndarray]:
    return {"layer01.weights": np.array([value])}


def test_plain_gradient_step() -> None:
    params = _scalar(1.0)
    sgd_momentum_step(params, _scalar(0.5), VelocityState(), OptimizerConfig(0.1, 0.0))
    assert params["layer01.weights"][0] == pytest.approx(0.95, abs=1e-15)


def test_two_momentum_steps_match_hand_unroll() -> None:
    params = _scalar(0.0)
    optimizer = SGDMomentum(OptimizerConfig(0.1, 0.9))
    optimizer.step(params, _scalar(1.0))
    assert params["layer01.weights"][0] == pytest.approx(-0.1, abs=1e-15)
    optimizer.step(params, _scalar(1.0))
    assert params["layer01.weights"][0] == pytest.approx(-0.29, abs=1e-15)
    assert optimizer.iteration == 2


def test_matches_unrolled_trajectory_over_100_steps() -> None:
    rng = np.random.default_rng(12)
    alpha, beta = 0.05, 0.9
    theta0 = rng.standard_normal((3, 4))
    params = {"layer02.weights": theta0.copy()}
    optimizer = SGDMomentum(OptimizerConfig(alpha, beta))

    current, previous = theta0.copy(), theta0.copy()
    for _ in range(100):
        g = rng.standard_normal((3, 4))
        optimizer.step(params, {"layer02.weights": g})
        current, previous = current - alpha * g + beta * (current - previous), current
        assert_allclose(params["layer02.weights"], current, rtol=0, atol=1e-12)


def test_zero_momentum_is_plain_descent() -> None:
    rng = np.random.default_rng(3)
    theta = rng.standard_normal(5)
    params = {"layer03.bias": theta.copy()}
    optimizer = SGDMomentum(OptimizerConfig(0.2, 0.0))
    for _ in range(20):
        g = rng.standard_normal(5)
        optimizer.step(params, {"layer03.bias": g})
        theta = theta - 0.2 * g
    assert_allclose(params["layer03.bias"], theta, rtol=0, atol=1e-12)


def test_frozen_layer_bitwise_unchanged() -> None:
    rng = np.random.default_rng(4)
    params = {
        "layer01.weights": rng.standard_normal((2, 2)),
        "layer05.weights": rng.standard_normal((2, 2)),
    }
    frozen = params["layer01.weights"].copy()
    trained = params["layer05.weights"].copy()
    optimizer = SGDMomentum(OptimizerConfig(0.1, 0.9, {1: 0.0}))
    for _ in range(100):
        optimizer.step(params, {name: rng.standard_normal((2, 2)) for name in params})
    assert_array_equal(params["layer01.weights"], frozen)
    assert not np.array_equal(params["layer05.weights"], trained)


def test_multiplier_scales_rate() -> None:
    config = OptimizerConfig(0.01, 0.0, {1: 0.01})
    params = {"layer01.weights": np.array([1.0]), "layer02.weights": np.array([1.0])}
    grads = {"layer01.weights": np.array([1.0]), "layer02.weights": np.array([1.0])}
    sgd_momentum_step(params, grads, VelocityState(), config)
    assert params["layer01.weights"][0] == pytest.approx(1.0 - 1e-4)
    assert params["layer02.weights"][0] == pytest.approx(1.0 - 1e-2)


def test_shape_mismatch_rejected() -> None:
    with pytest.raises(ConfigurationError, match="differ"):
        sgd_momentum_step(
            _scalar(1.0), {"layer01.weights": np.ones(2)}, VelocityState(), OptimizerConfig(0.1)
        )


def test_missing_gradient_rejected() -> None:
    with pytest.raises(ConfigurationError, match="no gradient"):
        sgd_momentum_step(_scalar(1.0), {}, VelocityState(), OptimizerConfig(0.1))


@pytest.mark.parametrize("momentum", [-0.1, 1.0])
def test_momentum_range(momentum: float) -> None:
    with pytest.raises(ConfigurationError, match="momentum"):
        OptimizerConfig(0.1, momentum)


def test_negative_rate_rejected() -> None:
    with pytest.raises(ConfigurationError):
        OptimizerConfig(-0.1)


def test_velocity_zeros_like() -> None:
    velocity = VelocityState.zeros_like({"layer01.bias": np.ones(3)})
    assert_array_equal(velocity["layer01.bias"], np.zeros(3))
