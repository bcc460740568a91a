"""Central finite-difference checks for the hand-derived layer gradients."""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np

from gearnet.errors import ConfigurationError
from gearnet.nn import layers as L
from gearnet.nn.loss import LossConfig, cross_entropy_loss, softmax_cross_entropy_backward
from gearnet.nn.tensor import Tensor

logger = logging.getLogger(__name__)

LAYER_KINDS = ("conv", "relu", "lrn", "maxpool", "dense", "dropout", "softmax_xent")


def numerical_gradient(f: Callable[[], float], x: Tensor, eps: float = 1e-5) -> Tensor:
    """Central differences of the scalar ``f`` with respect to every element of ``x``.

    ``x`` is perturbed in place and restored; ``f`` must read it on each call.
    """
    grad = np.zeros_like(x)
    it = np.nditer(x, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        original = x[idx]
        x[idx] = original + eps
        upper = f()
        x[idx] = original - eps
        lower = f()
        x[idx] = original
        grad[idx] = (upper - lower) / (2.0 * eps)
    return grad


def relative_error(analytic: Tensor, numeric: Tensor) -> float:
    """‖a − n‖ / max(‖a‖ + ‖n‖, 1e-300); zero when both vanish."""
    diff = float(np.linalg.norm(analytic - numeric))
    scale = float(np.linalg.norm(analytic) + np.linalg.norm(numeric))
    if scale == 0.0:
        return 0.0
    return diff / max(scale, 1e-300)


def _weighted(output: Callable[[], Tensor], weights: Tensor) -> Callable[[], float]:
    return lambda: float(np.sum(output() * weights))


def _away_from_zero(rng: np.random.Generator, shape: tuple[int, ...]) -> Tensor:
    x = rng.standard_normal(shape)
    return np.where(np.abs(x) < 1e-2, np.sign(x) * 1e-2 + x, x) + 0.0


def _check_conv(rng: np.random.Generator, eps: float) -> dict[str, float]:
    stride = int(rng.integers(1, 3))
    padding = int(rng.integers(0, 2))
    h, w = (int(v) for v in rng.integers(3, 9, size=2))
    c, k = (int(v) for v in rng.integers(1, 4, size=2))
    p = int(rng.integers(1, min(h + 2 * padding, 4) + 1))
    q = int(rng.integers(1, min(w + 2 * padding, 4) + 1))
    x = rng.standard_normal((h, w, c))
    weights = rng.standard_normal((p, q, c, k))
    bias = rng.standard_normal(k)
    spec = L.ConvSpec.from_weights(weights, bias, stride, padding)
    g = rng.standard_normal(L.conv_forward(x, spec).shape)
    gx, gw, gb = L.conv_backward(x, spec, g)
    f = _weighted(lambda: L.conv_forward(x, spec), g)
    return {
        "input": relative_error(gx, numerical_gradient(f, x, eps)),
        "weights": relative_error(gw, numerical_gradient(f, weights, eps)),
        "bias": relative_error(gb, numerical_gradient(f, bias, eps)),
    }


def _check_relu(rng: np.random.Generator, eps: float) -> dict[str, float]:
    shape = tuple(int(v) for v in rng.integers(1, 9, size=2)) + (int(rng.integers(1, 4)),)
    x = _away_from_zero(rng, shape)
    g = rng.standard_normal(shape)
    f = _weighted(lambda: L.relu_forward(x), g)
    return {"input": relative_error(L.relu_backward(x, g), numerical_gradient(f, x, eps))}


def _check_lrn(rng: np.random.Generator, eps: float) -> dict[str, float]:
    shape = tuple(int(v) for v in rng.integers(1, 9, size=2)) + (int(rng.integers(1, 4)),)
    spec = L.LRNSpec(
        channel_span=int(rng.choice([1, 3, 5])),
        bias_k=float(rng.uniform(1.0, 3.0)),
        scale_alpha=float(rng.uniform(1e-4, 0.1)),
        exponent_beta=float(rng.uniform(0.5, 1.0)),
    )
    x = 3.0 * rng.standard_normal(shape)
    g = rng.standard_normal(shape)
    f = _weighted(lambda: L.lrn_forward(x, spec), g)
    return {"input": relative_error(L.lrn_backward(x, spec, g), numerical_gradient(f, x, eps))}


def _check_maxpool(rng: np.random.Generator, eps: float) -> dict[str, float]:
    h, w = (int(v) for v in rng.integers(3, 9, size=2))
    c = int(rng.integers(1, 4))
    size = int(rng.integers(2, min(h, w, 3) + 1))
    spec = L.MaxPoolSpec(size, size, int(rng.integers(1, 3)))
    # well-separated values keep every window maximum away from a tie
    x = (rng.permutation(h * w * c).reshape(h, w, c) * 0.1).astype(np.float64)
    g = rng.standard_normal(L.maxpool_forward(x, spec).shape)
    f = _weighted(lambda: L.maxpool_forward(x, spec), g)
    return {
        "input": relative_error(L.maxpool_backward(x, spec, g), numerical_gradient(f, x, eps))
    }


def _check_dense(rng: np.random.Generator, eps: float) -> dict[str, float]:
    n_in, n_out = (int(v) for v in rng.integers(1, 21, size=2))
    x = rng.standard_normal(n_in)
    weights = rng.standard_normal((n_out, n_in))
    bias = rng.standard_normal(n_out)
    spec = L.DenseSpec.from_weights(weights, bias)
    g = rng.standard_normal(n_out)
    gx, gw, gb = L.dense_backward(x, spec, g)
    f = _weighted(lambda: L.dense_forward(x, spec), g)
    return {
        "input": relative_error(gx, numerical_gradient(f, x, eps)),
        "weights": relative_error(gw, numerical_gradient(f, weights, eps)),
        "bias": relative_error(gb, numerical_gradient(f, bias, eps)),
    }


def _check_dropout(rng: np.random.Generator, eps: float) -> dict[str, float]:
    shape = tuple(int(v) for v in rng.integers(1, 9, size=2)) + (int(rng.integers(1, 4)),)
    spec = L.DropoutSpec(rate=float(rng.uniform(0.1, 0.9)), mode="train",
                         mask_seed=int(rng.integers(2**32)))
    x = rng.standard_normal(shape)
    _, mask = L.dropout_forward(x, spec)
    g = rng.standard_normal(shape)
    # frozen mask: the sampled pattern is reused for every perturbation
    f = _weighted(lambda: x * mask, g)
    return {"input": relative_error(L.dropout_backward(g, mask), numerical_gradient(f, x, eps))}


def _check_softmax_xent(rng: np.random.Generator, eps: float) -> dict[str, float]:
    classes = int(rng.integers(2, 12))
    z = 2.0 * rng.standard_normal(classes)
    label = int(rng.integers(classes))
    config = LossConfig(gamma=0.0, num_classes=classes)

    def f() -> float:
        return cross_entropy_loss(L.softmax_forward(z), label, [], config)

    analytic = softmax_cross_entropy_backward(L.softmax_forward(z), label)
    return {"logits": relative_error(analytic, numerical_gradient(f, z, eps))}


_CHECKS: dict[str, Callable[[np.random.Generator, float], dict[str, float]]] = {
    "conv": _check_conv,
    "relu": _check_relu,
    "lrn": _check_lrn,
    "maxpool": _check_maxpool,
    "dense": _check_dense,
    "dropout": _check_dropout,
    "softmax_xent": _check_softmax_xent,
}


def check_layer_gradients(
    kind: str, rng: np.random.Generator, eps: float = 1e-5
) -> dict[str, float]:
    """Compare one randomly shaped layer's backward pass against central differences.

    Returns the relative error per gradient (input, weights, bias or logits).
    """
    try:
        check = _CHECKS[kind]
    except KeyError:
        raise ConfigurationError(
            f"unknown layer kind {kind!r}; choose from {', '.join(LAYER_KINDS)}"
        ) from None
    errors = check(rng, eps)
    logger.debug("gradcheck %s: %s", kind, errors)
    return errors
