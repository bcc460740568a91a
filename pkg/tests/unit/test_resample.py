"""Tests for gearnet.signals.resample — angle-even resampling, decimation and spectra."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from gearnet.errors import InsufficientPulsesError, SignalError
from gearnet.signals.records import AngleRecord, TimeRecord
from gearnet.signals.resample import angle_resample, decimate, order_spectrum, time_spectrum

FS = 20_000.0


def constant_speed_record(speed_hz: float, duration_s: float, order: int = 32) -> TimeRecord:
    t = np.arange(int(round(duration_s * FS)) + 1) / FS
    pulses = np.arange(int(np.floor(duration_s * speed_hz + 1e-9)) + 1) / speed_hz
    return TimeRecord(np.sin(order * 2 * np.pi * speed_hz * t), FS, pulses)


def ramp_record(duration_s: float = 1.0) -> TimeRecord:
    # f(t) = 20 + 4 t / T Hz, so theta(t) = 2 pi (20 t + 2 t^2 / T)
    t = np.arange(int(round(duration_s * FS)) + 1) / FS
    theta = 2 * np.pi * (20 * t + 2 * t**2 / duration_s)
    a = 2 / duration_s
    ks = np.arange(int(22 * duration_s))
    pulses = (-20 + np.sqrt(400 + 4 * a * ks)) / (2 * a)
    return TimeRecord(np.cos(32 * theta), FS, pulses)


def _bins_for_share(magnitudes: np.ndarray, share: float) -> int:
    energy = np.sort(magnitudes[1:] ** 2)[::-1]
    return int(np.searchsorted(np.cumsum(energy) / energy.sum(), share) + 1)


class TestAngleResample:
    def test_constant_speed_matches_analytic_sinusoid(self) -> None:
        angle = angle_resample(constant_speed_record(5.0, 1.0), 900, 4)
        expected = np.sin(32 * 2 * np.pi * np.arange(3600) / 900)
        assert np.max(np.abs(angle.samples - expected)) < 1e-3

    def test_constant_speed_on_grid_is_identity(self) -> None:
        # 18 kHz at 20 Hz puts every time sample on the 900-per-revolution angle grid
        rate, speed = 18_000.0, 20.0
        samples = np.random.default_rng(4).standard_normal(3601)
        record = TimeRecord(samples, rate, np.arange(5) / speed)
        angle = angle_resample(record, 900, 4)
        assert np.max(np.abs(angle.samples - samples[:3600])) < 1e-9

    def test_sample_count(self) -> None:
        angle = angle_resample(constant_speed_record(5.0, 1.0), 900, 4)
        assert angle.samples.shape == (3600,)
        assert angle.samples_per_revolution == 900
        assert angle.revolutions == 4

    def test_speed_ramp_sharpens_mesh_order(self) -> None:
        record = ramp_record()
        angle = angle_resample(record, 900, 4)
        orders, mags = order_spectrum(angle)
        energy = mags**2
        peak = int(np.argmin(np.abs(orders - 32)))
        assert energy[peak] / energy[1:].sum() > 0.9
        _, time_mags = time_spectrum(record)
        assert _bins_for_share(time_mags, 0.9) >= 3

    def test_label_carried(self) -> None:
        angle = angle_resample(constant_speed_record(5.0, 1.0), 900, 4, label=3)
        assert angle.condition_label == 3

    def test_insufficient_pulses_reports_available(self) -> None:
        record = TimeRecord(np.zeros(2001), FS, np.array([0.0, 0.04, 0.08]))
        with pytest.raises(InsufficientPulsesError, match="2 full revolutions"):
            angle_resample(record, 900, 4)


class TestDecimate:
    @pytest.fixture
    def angle(self) -> AngleRecord:
        return AngleRecord(np.random.default_rng(0).standard_normal(3600), 900, 4, 2)

    def test_factor_four(self, angle: AngleRecord) -> None:
        out = decimate(angle, 4)
        assert out.samples.shape == (900,)
        assert out.samples_per_revolution == 225
        assert_array_equal(out.samples, angle.samples[::4])

    def test_factor_one_is_identity(self, angle: AngleRecord) -> None:
        assert_array_equal(decimate(angle, 1).samples, angle.samples)

    def test_composition(self, angle: AngleRecord) -> None:
        assert_array_equal(decimate(decimate(angle, 2), 2).samples, decimate(angle, 4).samples)

    def test_non_divisible_length(self, angle: AngleRecord) -> None:
        with pytest.raises(SignalError, match="3600 samples are not divisible by .* 7"):
            decimate(angle, 7)

    def test_length_checked_before_revolution(self) -> None:
        angle = AngleRecord(np.arange(3600.0), 900, 4)
        with pytest.raises(SignalError, match="900 samples per revolution"):
            decimate(angle, 8)

    def test_factor_dividing_revolution(self) -> None:
        angle = AngleRecord(np.arange(3600.0), 900, 4)
        out = decimate(angle, 9)
        assert out.samples_per_revolution == 100
        assert out.revolutions == 4
        assert_array_equal(out.samples, np.arange(0.0, 3600.0, 9.0))


def test_order_spectrum_resolution() -> None:
    angle = AngleRecord(np.cos(2 * np.pi * 10 * np.arange(3600) / 900), 900, 4)
    orders, mags = order_spectrum(angle)
    assert orders[1] == 0.25
    assert orders[int(np.argmax(mags))] == 10.0
    assert mags.max() == pytest.approx(1.0, abs=1e-9)


def test_time_record_validates_pulses() -> None:
    with pytest.raises(SignalError, match="increasing"):
        TimeRecord(np.zeros(100), FS, np.array([0.001, 0.001]))
    with pytest.raises(SignalError, match="outside"):
        TimeRecord(np.zeros(100), FS, np.array([0.0, 1.0]))
