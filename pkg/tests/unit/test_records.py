"""Tests for gearnet.signals.records and gearnet.signals.pipeline — file formats and encoding."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from gearnet.config import PipelineConfig
from gearnet.errors import SignalError
from gearnet.signals.pipeline import build_image_dataset
from gearnet.signals.records import (
    MANIFEST_NAME,
    TimeRecord,
    read_manifest,
    read_time_record,
    tach_path_for,
    write_manifest,
    write_time_record,
)


@pytest.fixture
def record() -> TimeRecord:
    t = np.arange(4001) / 4000.0
    return TimeRecord(np.sin(2 * np.pi * 50 * t) + 0.1, 4000.0, np.arange(6) * 0.2)


def _row(name: str, condition: int) -> dict:
    return {
        "file": name,
        "condition": condition,
        "condition_name": f"c{condition}",
        "severity": 0.0,
        "encoder": "reshape",
        "seed": 0,
    }


def test_time_record_roundtrip(record: TimeRecord, tmp_path: Path) -> None:
    path = write_time_record(record, tmp_path / "healthy_000.csv")
    assert tach_path_for(path).name == "healthy_000.tach.csv"
    loaded = read_time_record(path)
    assert loaded.sample_rate_hz == 4000.0
    assert_array_equal(loaded.samples, record.samples)
    assert_array_equal(loaded.tach_pulse_times_s, record.tach_pulse_times_s)


def test_rate_override(tmp_path: Path) -> None:
    path = tmp_path / "raw.csv"
    path.write_text("0.0\n1.0\n0.0\n1.0\n")
    tach_path_for(path).write_text("0.0\n")
    assert read_time_record(path, sample_rate_hz=2.0).duration_s == 1.5


def test_missing_rate(tmp_path: Path) -> None:
    path = tmp_path / "raw.csv"
    path.write_text("0.0\n1.0\n")
    tach_path_for(path).write_text("0.0\n")
    with pytest.raises(SignalError, match="rate_hz"):
        read_time_record(path)


def test_missing_tach(record: TimeRecord, tmp_path: Path) -> None:
    path = write_time_record(record, tmp_path / "a.csv")
    tach_path_for(path).unlink()
    with pytest.raises(FileNotFoundError, match="Tach"):
        read_time_record(path)


def test_bad_number(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("# rate_hz=10\n0.5\nabc\n")
    tach_path_for(path).write_text("0.0\n")
    with pytest.raises(SignalError, match=r"bad\.csv: .*'abc'"):
        read_time_record(path)


def test_bad_rate_header(tmp_path: Path) -> None:
    path = tmp_path / "raw.csv"
    path.write_text("# rate_hz=fast\n0.0\n1.0\n")
    tach_path_for(path).write_text("0.0\n")
    with pytest.raises(SignalError, match="'fast' is not a number"):
        read_time_record(path)


def test_written_files_are_numpy_text(record: TimeRecord, tmp_path: Path) -> None:
    path = write_time_record(record, tmp_path / "a.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "# rate_hz=4000.0"
    assert len(lines) == 1 + record.samples.size
    assert_array_equal(np.loadtxt(tach_path_for(path)), record.tach_pulse_times_s)


def test_first_column_of_multi_column_csv(tmp_path: Path) -> None:
    path = tmp_path / "two.csv"
    path.write_text("# rate_hz=2\n0.5,9\n1.5,9\n2.5,9\n")
    tach_path_for(path).write_text("0.0\n1.0\n")
    assert_array_equal(read_time_record(path).samples, [0.5, 1.5, 2.5])


def test_manifest_roundtrip(tmp_path: Path) -> None:
    rows = [_row("a.csv", 0), _row("b.csv", 1)]
    assert write_manifest(rows, tmp_path).name == MANIFEST_NAME
    assert read_manifest(tmp_path) == rows


def test_manifest_requires_fields(tmp_path: Path) -> None:
    with pytest.raises(SignalError, match="lacks"):
        write_manifest([{"file": "a.csv"}], tmp_path)


def test_build_image_dataset(record: TimeRecord) -> None:
    pipeline = PipelineConfig(samples_per_revolution=100, revolutions=4)
    dataset = build_image_dataset(
        [record, record], [_row("a.csv", 0), _row("b.csv", 3)], pipeline, (32, 32, 3)
    )
    assert dataset.images.shape == (2, 32, 32, 3)
    assert dataset.labels.tolist() == [0, 3]
    assert dataset.provenance[1]["file"] == "b.csv"
    assert dataset.provenance[1]["decimate"] == 1


def test_build_image_dataset_decimates(record: TimeRecord) -> None:
    pipeline = PipelineConfig(samples_per_revolution=100, revolutions=4, decimate=4)
    dataset = build_image_dataset([record], [_row("a.csv", 0)], pipeline, (32, 32, 3))
    assert dataset.provenance[0]["decimate"] == 4


def test_build_image_dataset_length_mismatch(record: TimeRecord) -> None:
    with pytest.raises(SignalError, match="manifest rows"):
        build_image_dataset([record], [], PipelineConfig(), (32, 32, 3))


def test_build_image_dataset_channels(record: TimeRecord) -> None:
    with pytest.raises(SignalError, match="3 channels"):
        build_image_dataset([record], [_row("a.csv", 0)], PipelineConfig(), (32, 32, 1))
