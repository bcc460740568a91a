"""Signal-to-image encoders feeding angle records into an image classifier."""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
import numpy.typing as npt

from gearnet.errors import SignalError
from gearnet.nn.tensor import Tensor
from gearnet.signals.records import AngleRecord, ImageSample, Signal

Encoder = Literal["reshape", "plot_raster"]
ENCODERS: tuple[Encoder, ...] = ("reshape", "plot_raster")

ZERO_VARIANCE_LEVEL = 0.5

Index = npt.NDArray[np.int64]


def unit_scale(samples: Signal) -> Signal | None:
    """z-score then min-max to [0, 1]; None for a zero-variance signal."""
    if np.ptp(samples) == 0.0:
        return None
    z = (samples - np.mean(samples)) / np.std(samples)
    lo, hi = float(z.min()), float(z.max())
    if hi == lo:
        return None
    return (z - lo) / (hi - lo)


def square_grid(n: int) -> tuple[int, int]:
    """The most-square rows x cols factorization of ``n`` (rows <= cols)."""
    rows = max(d for d in range(1, math.isqrt(n) + 1) if n % d == 0)
    return rows, n // rows


def _axis_weights(size_in: int, size_out: int) -> tuple[Index, Index, Signal]:
    if size_out == 1 or size_in == 1:
        pos = np.zeros(size_out)
    else:
        pos = np.arange(size_out) * ((size_in - 1) / (size_out - 1))
    lo = np.floor(pos).astype(np.int64)
    hi = np.minimum(lo + 1, size_in - 1)
    return lo, hi, pos - lo


def bilinear_resize(grid: Tensor, height: int, width: int) -> Tensor:
    """Align-corners bilinear resize of a 2-D grid to height x width."""
    y0, y1, wy = _axis_weights(grid.shape[0], height)
    x0, x1, wx = _axis_weights(grid.shape[1], width)
    wy, wx = wy[:, None], wx[None, :]
    top = grid[y0][:, x0] * (1.0 - wx) + grid[y0][:, x1] * wx
    bottom = grid[y1][:, x0] * (1.0 - wx) + grid[y1][:, x1] * wx
    return top * (1.0 - wy) + bottom * wy


def _reshape_image(samples: Signal, height: int, width: int) -> Tensor:
    scaled = unit_scale(samples)
    if scaled is None:
        return np.full((height, width), ZERO_VARIANCE_LEVEL)
    return bilinear_resize(scaled.reshape(square_grid(samples.size)), height, width)


def _raster_image(samples: Signal, height: int, width: int) -> Tensor:
    """Polyline of amplitude against angle: background 1.0, line 0.0, high values on top."""
    scaled = unit_scale(samples)
    if scaled is None:
        scaled = np.full(samples.size, ZERO_VARIANCE_LEVEL)
    n = samples.size
    xs = np.arange(n) * ((width - 1) / max(n - 1, 1))
    ys = (1.0 - scaled) * (height - 1)
    canvas = np.ones((height, width))
    if n == 1:
        canvas[int(np.rint(ys[0])), int(np.rint(xs[0]))] = 0.0
        return canvas

    dx, dy = np.diff(xs), np.diff(ys)
    steps = np.ceil(np.maximum(np.abs(dx), np.abs(dy))).astype(np.int64) + 1
    seg = np.repeat(np.arange(n - 1), steps)
    offsets = np.arange(seg.size) - np.repeat(np.cumsum(steps) - steps, steps)
    t = offsets / np.maximum(steps - 1, 1)[seg]
    cols = np.rint(xs[seg] + t * dx[seg]).astype(np.int64)
    rows = np.rint(ys[seg] + t * dy[seg]).astype(np.int64)
    canvas[np.clip(rows, 0, height - 1), np.clip(cols, 0, width - 1)] = 0.0
    return canvas


def encode_image(
    record: AngleRecord,
    encoder: Encoder = "reshape",
    target: tuple[int, int] = (32, 32),
    source_id: str = "",
) -> ImageSample:
    """Render an angle record as an [H, W, 3] image with values in [0, 1].

    A zero-variance record encodes as a uniform 0.5 image under ``reshape``
    and a mid-height line under ``plot_raster``.
    """
    if record.samples.size == 0:
        raise SignalError("cannot encode an empty record")
    height, width = target
    if height < 1 or width < 1:
        raise SignalError(f"target image size must be positive, got {target}")
    if encoder == "reshape":
        plane = _reshape_image(record.samples, height, width)
    elif encoder == "plot_raster":
        plane = _raster_image(record.samples, height, width)
    else:
        raise SignalError(f"unknown encoder {encoder!r}; choose from {', '.join(ENCODERS)}")
    pixels = np.repeat(plane[:, :, np.newaxis], 3, axis=2)
    return ImageSample(pixels, record.condition_label, source_id)
