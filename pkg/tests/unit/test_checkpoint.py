"""Tests for gearnet.network.checkpoint — binary codec and its failure modes."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from gearnet.errors import (
    CheckpointIntegrityError,
    CheckpointVersionError,
    NotACheckpointError,
    TruncatedCheckpointError,
)
from gearnet.network.checkpoint import (
    Checkpoint,
    decode_checkpoint,
    encode_checkpoint,
    load_checkpoint,
    read_checkpoint,
    read_tensor_file,
    save_checkpoint,
    write_tensor_file,
)
from gearnet.network.model import build_network
from gearnet.network.spec import get_spec


@pytest.fixture
def mini():
    return build_network(get_spec("mini"), init_seed=9)


def test_save_then_load_is_bitwise(mini, tmp_path: Path) -> None:
    path = save_checkpoint(mini, tmp_path / "mini.gnck", provenance={"task": "source"})
    loaded = load_checkpoint(path)
    assert loaded.spec == mini.spec
    assert set(loaded.parameters) == set(mini.parameters)
    for name, tensor in mini.parameters.items():
        assert_array_equal(loaded.parameters[name], tensor)
        assert loaded.parameters[name].dtype == np.float64


def test_provenance_roundtrip(mini, tmp_path: Path) -> None:
    path = save_checkpoint(mini, tmp_path / "mini.gnck", provenance={"epochs": 15, "seed": 1})
    assert read_checkpoint(path).provenance == {"epochs": 15, "seed": 1}


def test_float32_storage_widens_on_load(mini, tmp_path: Path) -> None:
    path = save_checkpoint(mini, tmp_path / "mini32.gnck", dtype="float32")
    loaded = load_checkpoint(path)
    for name, tensor in mini.parameters.items():
        assert loaded.parameters[name].dtype == np.float64
        assert_array_equal(loaded.parameters[name], tensor.astype(np.float32).astype(np.float64))


def test_encoding_is_deterministic(mini) -> None:
    checkpoint = Checkpoint(mini.spec, mini.parameters)
    assert encode_checkpoint(checkpoint) == encode_checkpoint(checkpoint)


def test_bad_magic(mini) -> None:
    data = bytearray(encode_checkpoint(Checkpoint(mini.spec, mini.parameters)))
    data[:4] = b"XXXX"
    with pytest.raises(NotACheckpointError, match="not a checkpoint"):
        decode_checkpoint(bytes(data))


def test_unsupported_version(mini) -> None:
    data = bytearray(encode_checkpoint(Checkpoint(mini.spec, mini.parameters)))
    data[4] = 99
    with pytest.raises(CheckpointVersionError):
        decode_checkpoint(bytes(data))


def test_truncated_payload(mini) -> None:
    data = encode_checkpoint(Checkpoint(mini.spec, mini.parameters))
    with pytest.raises(TruncatedCheckpointError):
        decode_checkpoint(data[:-10])


def test_shape_disagreement_is_integrity_error(mini) -> None:
    params = dict(mini.parameters)
    params["layer01.bias"] = np.zeros(3)
    data = encode_checkpoint(Checkpoint(mini.spec, params))
    with pytest.raises(CheckpointIntegrityError, match="layer01.bias"):
        decode_checkpoint(data)


def test_trailing_bytes_rejected(mini) -> None:
    data = encode_checkpoint(Checkpoint(mini.spec, mini.parameters))
    with pytest.raises(CheckpointIntegrityError, match="trailing"):
        decode_checkpoint(data + b"\x00")


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        read_checkpoint(tmp_path / "absent.gnck")


def test_tensor_file_roundtrip(tmp_path: Path) -> None:
    tensor = np.arange(24.0).reshape(2, 3, 4)
    write_tensor_file(tmp_path / "t.gnt", "conv1", tensor)
    name, loaded = read_tensor_file(tmp_path / "t.gnt")
    assert name == "conv1"
    assert_array_equal(loaded, tensor)
