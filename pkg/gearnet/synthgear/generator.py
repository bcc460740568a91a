"""Seeded synthetic gearbox vibration records.

The input shaft turns at a nominal speed with a slow seeded fluctuation.
The first-stage mesh contributes ``harmonics`` cosines at orders
pinion_teeth·h. A fault adds an angle-locked burst once per shaft revolution
at ``fault_angle_rad``, plus a dip in the mesh amplitude over the same window.
Gaussian noise is added last.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from gearnet.config import GearboxConfig
from gearnet.errors import SynthesisError
from gearnet.signals.records import (
    Signal,
    TimeRecord,
    read_manifest,
    read_time_record,
    write_manifest,
    write_time_record,
)
from gearnet.signals.resample import angle_resample, order_spectrum
from gearnet.synthgear.conditions import ConditionSpec, canonical_conditions

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi
MIN_PULSES = 5
SPEED_COMPONENTS = 3
AMPLITUDE_JITTER = 0.1

# Burst half-widths in tooth pitches.
_HALF_WIDTH = {"missing_tooth": 1.0, "root_crack": 0.2, "spalling": 0.3, "chip": 0.4}
_SPALL_OFFSET = 0.45


@dataclass
class Corpus:
    records: list[TimeRecord]
    manifest: list[dict[str, Any]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)


def signal_seed(seed: int, label: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, label, index]).generate_state(1)[0])


def _hann(local: Signal, half_width: float) -> Signal:
    inside = np.abs(local) < half_width
    return np.where(inside, 0.5 * (1.0 + np.cos(np.pi * local / half_width)), 0.0)


def _local_angle(theta: Signal, fault_angle: float) -> Signal:
    """Angle relative to the fault tooth, wrapped into [-π, π)."""
    return np.mod(theta - fault_angle + np.pi, TWO_PI) - np.pi


def fault_window(config: GearboxConfig, condition: ConditionSpec, theta: Signal) -> Signal:
    """Support of the fault terms along ``theta``; all zeros for a healthy gear."""
    if condition.family == "healthy":
        return np.zeros_like(theta)
    pitch = TWO_PI / config.pinion_teeth
    local = _local_angle(theta, config.fault_angle_rad)
    half = _HALF_WIDTH[condition.family] * pitch
    if condition.family == "spalling":
        offset = _SPALL_OFFSET * pitch
        return np.maximum(_hann(local - offset, half), _hann(local + offset, half))
    return _hann(local, half)


def _fault_terms(
    config: GearboxConfig, condition: ConditionSpec, theta: Signal
) -> tuple[Signal, Signal]:
    """(mesh amplitude modulation m(θ), additive burst) for one condition."""
    window = fault_window(config, condition, theta)
    strength = condition.severity_scale
    modulation = -condition.modulation_depth * strength * window
    local = _local_angle(theta, config.fault_angle_rad)
    carrier = np.cos(config.burst_carrier_order * local)
    if condition.family == "missing_tooth":
        carrier = np.cos(0.25 * config.burst_carrier_order * local)
    burst = condition.impulse_amplitude * strength * window * carrier
    return modulation, burst


def _speed_profile(rng: np.random.Generator) -> tuple[Signal, Signal, Signal]:
    weights = rng.dirichlet(np.ones(SPEED_COMPONENTS))
    rates = rng.uniform(0.5, 3.0, SPEED_COMPONENTS)
    phases = rng.uniform(0.0, TWO_PI, SPEED_COMPONENTS)
    return weights, rates, phases


def shaft_angle(
    config: GearboxConfig, times_s: Signal, profile: tuple[Signal, Signal, Signal]
) -> Signal:
    """θ(t) = 2π∫f, with f = f0·(1 + pct/100·Σ w_j sin(2πν_j t + ψ_j)) and θ(0) = 0."""
    weights, rates, phases = profile
    depth = config.speed_fluctuation_pct / 100.0
    t = times_s[:, None]
    wobble = weights * (np.cos(phases) - np.cos(TWO_PI * rates * t + phases)) / (TWO_PI * rates)
    return TWO_PI * config.nominal_speed_hz * (times_s + depth * wobble.sum(axis=1))


def tach_pulses(theta: Signal, times_s: Signal) -> Signal:
    """Times at which θ crosses 0, 2π, 4π, ..."""
    count = int(np.floor(theta[-1] / TWO_PI)) + 1
    return np.interp(TWO_PI * np.arange(count), theta, times_s)


def generate_signal(
    config: GearboxConfig, condition: ConditionSpec, seed: int
) -> TimeRecord:
    """One time record with tach pulses, fully determined by (config, condition, seed).

    Random draws happen in the same order for every condition, so records
    sharing a seed differ only by their fault terms.
    """
    rng = np.random.default_rng(seed)
    n = int(np.floor(config.record_revolutions / config.nominal_speed_hz * config.sample_rate_hz))
    times = np.arange(n + 1) / config.sample_rate_hz

    harmonic_phases = rng.uniform(0.0, TWO_PI, config.harmonics)
    jitter = 1.0 + AMPLITUDE_JITTER * rng.standard_normal(config.harmonics)
    profile = _speed_profile(rng)
    second_phase = rng.uniform(0.0, TWO_PI)
    noise = rng.standard_normal(times.size)

    theta = shaft_angle(config, times, profile)
    pulses = tach_pulses(theta, times)
    if pulses.size < MIN_PULSES:
        raise SynthesisError(
            f"record of {config.record_revolutions} revolutions yields {pulses.size} tach "
            f"pulses; at least {MIN_PULSES} are needed"
        )

    mesh = np.zeros_like(times)
    for h in range(1, config.harmonics + 1):
        amplitude = jitter[h - 1] / h
        mesh += amplitude * np.cos(h * config.pinion_teeth * theta + harmonic_phases[h - 1])
    modulation, burst = _fault_terms(config, condition, theta)
    samples = mesh * (1.0 + modulation) + burst
    if config.second_stage_amplitude:
        intermediate = config.pinion_teeth / config.gear_teeth
        order = config.second_stage[0] * intermediate
        samples = samples + config.second_stage_amplitude * np.cos(order * theta + second_phase)
    if config.noise_std:
        samples = samples + config.noise_std * noise
    return TimeRecord(samples, config.sample_rate_hz, pulses)


def generate_dataset(
    config: GearboxConfig,
    conditions: Sequence[ConditionSpec] | None = None,
    signals_per_condition: int = 104,
    seed: int = 0,
    encoder: str = "reshape",
) -> Corpus:
    """``signals_per_condition`` records per condition, seeded by (seed, label, index)."""
    if signals_per_condition < 1:
        raise SynthesisError(f"signals_per_condition must be positive, got {signals_per_condition}")
    conditions = list(conditions) if conditions is not None else canonical_conditions()
    corpus = Corpus([])
    for condition in conditions:
        for index in range(signals_per_condition):
            s = signal_seed(seed, condition.label, index)
            corpus.records.append(generate_signal(config, condition, s))
            corpus.manifest.append(
                {
                    "file": f"{condition.name}_{index:03d}.csv",
                    "condition": condition.label,
                    "condition_name": condition.name,
                    "severity": condition.severity_scale,
                    "encoder": encoder,
                    "seed": s,
                }
            )
        logger.debug("Generated %d signals for %s", signals_per_condition, condition.name)
    logger.info(
        "Synthesized %d records (%d conditions x %d) from seed %d",
        len(corpus),
        len(conditions),
        signals_per_condition,
        seed,
    )
    return corpus


def save_corpus(corpus: Corpus, out_dir: Path | str) -> Path:
    out_dir = Path(out_dir)
    for record, row in zip(corpus.records, corpus.manifest, strict=True):
        write_time_record(record, out_dir / row["file"])
    return write_manifest(corpus.manifest, out_dir)


def load_corpus(data_dir: Path | str) -> Corpus:
    data_dir = Path(data_dir)
    manifest = read_manifest(data_dir)
    records = [read_time_record(data_dir / row["file"]) for row in manifest]
    logger.info("Loaded %d records from %s", len(records), data_dir)
    return Corpus(records, manifest)


def order_spectrum_features(
    corpus: Corpus, samples_per_revolution: int = 900, revolutions: int = 4
) -> npt.NDArray[np.float64]:
    """Angle-domain order-spectrum magnitudes, one row per record."""
    return np.stack(
        [
            order_spectrum(angle_resample(r, samples_per_revolution, revolutions))[1]
            for r in corpus.records
        ]
    )


def nearest_centroid_accuracy(
    train_features: npt.NDArray[np.float64],
    train_labels: npt.NDArray[np.integer],
    test_features: npt.NDArray[np.float64],
    test_labels: npt.NDArray[np.integer],
) -> float:
    """Accuracy of assigning each test row to the closest per-class mean of the train rows."""
    classes = np.unique(train_labels)
    centroids = np.stack([train_features[train_labels == c].mean(axis=0) for c in classes])
    distances = ((test_features[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    predicted = classes[np.argmin(distances, axis=1)]
    return float(np.mean(predicted == test_labels))
