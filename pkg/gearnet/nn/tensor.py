"""Tensor helpers.

A tensor is a numpy array of 64-bit reals stored row-major. Activations use
the channels-last layout [H, W, C]; batched activations prepend N.
"""

from __future__ import annotations

from typing import Any

import numpy as np
import numpy.typing as npt

from gearnet.errors import ConfigurationError

Tensor = npt.NDArray[np.float64]

DTYPE = np.float64


def as_tensor(data: Any, shape: tuple[int, ...] | None = None) -> Tensor:
    """Convert ``data`` to a contiguous float64 tensor, optionally reshaping it."""
    arr = np.ascontiguousarray(np.asarray(data, dtype=DTYPE))
    if shape is not None:
        expected = int(np.prod(shape))
        if arr.size != expected:
            raise ConfigurationError(
                f"data length {arr.size} does not match shape {tuple(shape)} ({expected})"
            )
        arr = arr.reshape(shape)
    validate_tensor(arr)
    return arr


def validate_tensor(arr: npt.NDArray[Any]) -> None:
    """Check that the shape is non-empty and every dimension is at least one."""
    if arr.ndim == 0:
        raise ConfigurationError("tensor shape must be non-empty")
    for axis, dim in enumerate(arr.shape):
        if dim < 1:
            raise ConfigurationError(f"tensor dimension {axis} must be >= 1, got {dim}")


def zeros(shape: tuple[int, ...]) -> Tensor:
    return np.zeros(shape, dtype=DTYPE)


def batched(x: Tensor, sample_ndim: int) -> tuple[Tensor, bool]:
    """Return ``x`` with a leading batch axis and whether one was added."""
    if x.ndim == sample_ndim:
        return x[np.newaxis, ...], True
    if x.ndim == sample_ndim + 1:
        return x, False
    raise ConfigurationError(
        f"expected a tensor of rank {sample_ndim} or {sample_ndim + 1}, got shape {x.shape}"
    )


def unbatched(x: Tensor, added: bool) -> Tensor:
    return x[0] if added else x
