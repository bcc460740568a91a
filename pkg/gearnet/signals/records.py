"""Vibration records and their on-disk formats.

Signal files are CSV with one sample per line and an optional
``# rate_hz=<r>`` header; tachometer pulses live in a sibling
``<stem>.tach.csv`` with one pulse time (seconds) per line. A corpus
manifest is a JSON list of ``{file, condition, condition_name, severity,
encoder, seed}`` rows.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from gearnet.errors import SignalError
from gearnet.nn.tensor import Tensor

logger = logging.getLogger(__name__)

RATE_HEADER = "# rate_hz="
MANIFEST_NAME = "manifest.json"
MANIFEST_FIELDS = ("file", "condition", "condition_name", "severity", "encoder", "seed")

Signal = npt.NDArray[np.float64]


@dataclass(eq=False)
class TimeRecord:
    """Time-even acceleration samples with one tachometer pulse per shaft revolution."""

    samples: Signal
    sample_rate_hz: float
    tach_pulse_times_s: Signal

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        self.tach_pulse_times_s = np.asarray(self.tach_pulse_times_s, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise SignalError("time record needs a non-empty 1-D sample array")
        if self.sample_rate_hz <= 0:
            raise SignalError(f"sample rate must be positive, got {self.sample_rate_hz}")
        pulses = self.tach_pulse_times_s
        if pulses.size > 1 and np.any(np.diff(pulses) <= 0):
            raise SignalError("tach pulse times must be strictly increasing")
        if pulses.size and (pulses[0] < 0 or pulses[-1] > self.duration_s):
            raise SignalError(
                f"tach pulses span {pulses[0]:.6f}..{pulses[-1]:.6f} s, outside the "
                f"record's 0..{self.duration_s:.6f} s"
            )

    @property
    def duration_s(self) -> float:
        return (self.samples.size - 1) / self.sample_rate_hz

    @property
    def times_s(self) -> Signal:
        return np.arange(self.samples.size) / self.sample_rate_hz


@dataclass(eq=False)
class AngleRecord:
    samples: Signal
    samples_per_revolution: int
    revolutions: int
    condition_label: int = -1

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        expected = self.samples_per_revolution * self.revolutions
        if self.samples.shape != (expected,):
            raise SignalError(
                f"angle record holds {self.samples.shape} samples, expected "
                f"{self.samples_per_revolution} x {self.revolutions} = {expected}"
            )


@dataclass(eq=False)
class ImageSample:
    pixels: Tensor
    label: int
    source_id: str = ""


# --- signal files ----------------------------------------------------------------


def tach_path_for(path: Path) -> Path:
    return path.with_name(f"{path.stem}.tach.csv")


def write_time_record(record: TimeRecord, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, record.samples, fmt="%.17g", header=f"rate_hz={record.sample_rate_hz!r}")
    np.savetxt(tach_path_for(path), record.tach_pulse_times_s, fmt="%.17g")
    return path


def _read_headers(path: Path) -> dict[str, str]:
    """``key=value`` pairs from the leading ``#`` lines."""
    headers: dict[str, str] = {}
    with open(path) as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, sep, value = line.lstrip("# ").partition("=")
            if sep:
                headers[key.strip()] = value.strip()
    return headers


def _read_column(path: Path) -> Signal:
    """First comma-separated column as float64; ``#`` lines are comments."""
    try:
        return np.loadtxt(path, delimiter=",", usecols=0, comments="#", ndmin=1, dtype=np.float64)
    except ValueError as e:
        raise SignalError(f"{path}: {e}") from None


def read_time_record(
    path: Path | str, sample_rate_hz: float | None = None, tach_path: Path | str | None = None
) -> TimeRecord:
    """Read a signal CSV and its tach file; the rate comes from the header unless given."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Signal file not found: {path}")
    rate = sample_rate_hz if sample_rate_hz is not None else _read_headers(path).get("rate_hz")
    if rate is None:
        raise SignalError(f"{path}: no '{RATE_HEADER}' header and no sample rate given")
    tach = Path(tach_path) if tach_path else tach_path_for(path)
    if not tach.exists():
        raise FileNotFoundError(f"Tach file not found: {tach}")
    try:
        rate_hz = float(rate)
    except ValueError:
        raise SignalError(f"{path}: sample rate {rate!r} is not a number") from None
    return TimeRecord(_read_column(path), rate_hz, _read_column(tach))


# --- manifests -------------------------------------------------------------------


def write_manifest(rows: list[dict[str, Any]], out_dir: Path | str) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for row in rows:
        missing = [k for k in MANIFEST_FIELDS if k not in row]
        if missing:
            raise SignalError(f"manifest row for {row.get('file', '?')} lacks {missing}")
    path = out_dir / MANIFEST_NAME
    path.write_text(json.dumps(rows, indent=2) + "\n")
    logger.debug("Manifest with %d rows written to %s", len(rows), path)
    return path


def read_manifest(data_dir: Path | str) -> list[dict[str, Any]]:
    path = Path(data_dir) / MANIFEST_NAME
    if not path.exists():
        raise FileNotFoundError(f"Manifest not found: {path}")
    rows: list[dict[str, Any]] = json.loads(path.read_text())
    return rows
