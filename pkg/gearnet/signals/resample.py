"""Order tracking: time-even to angle-even resampling, decimation and spectra."""

from __future__ import annotations

import logging

import numpy as np

from gearnet.errors import InsufficientPulsesError, SignalError
from gearnet.signals.records import AngleRecord, Signal, TimeRecord

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi


def angle_resample(
    record: TimeRecord, samples_per_revolution: int = 900, revolutions: int = 4, label: int = -1
) -> AngleRecord:
    """Resample at uniform shaft-angle increments of 2π/samples_per_revolution.

    Each pulse advances the shaft by 2π. The time of every target angle is
    interpolated linearly between the surrounding pulses, then the signal is
    interpolated linearly at that time.
    """
    if samples_per_revolution < 1 or revolutions < 1:
        raise SignalError("samples_per_revolution and revolutions must be positive")
    pulses = record.tach_pulse_times_s
    available = max(pulses.size - 1, 0)
    if available < revolutions:
        raise InsufficientPulsesError(
            f"{pulses.size} tach pulses cover {available} full revolutions, "
            f"{revolutions} requested"
        )
    pulse_angles = TWO_PI * np.arange(pulses.size)
    targets = np.arange(samples_per_revolution * revolutions) * (TWO_PI / samples_per_revolution)
    sample_times = np.interp(targets, pulse_angles, pulses)
    samples = np.interp(sample_times, record.times_s, record.samples)
    logger.debug(
        "Resampled %d time samples to %d x %d angle-even points",
        record.samples.size,
        revolutions,
        samples_per_revolution,
    )
    return AngleRecord(samples, samples_per_revolution, revolutions, label)


def decimate(record: AngleRecord, factor: int) -> AngleRecord:
    """Keep every ``factor``-th sample (plain point selection, no prefilter)."""
    if factor < 1:
        raise SignalError(f"decimation factor must be positive, got {factor}")
    if record.samples.size % factor:
        raise SignalError(
            f"{record.samples.size} samples are not divisible by decimation factor {factor}"
        )
    if record.samples_per_revolution % factor:
        raise SignalError(
            f"{record.samples_per_revolution} samples per revolution are not divisible by "
            f"decimation factor {factor}; the decimated record needs whole samples per revolution"
        )
    return AngleRecord(
        record.samples[::factor].copy(),
        record.samples_per_revolution // factor,
        record.revolutions,
        record.condition_label,
    )


def order_spectrum(record: AngleRecord) -> tuple[Signal, Signal]:
    """Single-sided amplitude spectrum over shaft orders; resolution is 1/revolutions."""
    n = record.samples.size
    magnitudes = np.abs(np.fft.rfft(record.samples)) * (2.0 / n)
    magnitudes[0] /= 2.0
    orders = np.arange(magnitudes.size) / record.revolutions
    return orders, magnitudes


def time_spectrum(record: TimeRecord) -> tuple[Signal, Signal]:
    """Single-sided amplitude spectrum of the time-even record over frequency (Hz)."""
    n = record.samples.size
    magnitudes = np.abs(np.fft.rfft(record.samples)) * (2.0 / n)
    magnitudes[0] /= 2.0
    return np.fft.rfftfreq(n, d=1.0 / record.sample_rate_hz), magnitudes
