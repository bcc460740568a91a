"""Binary checkpoint codec.

Layout (little-endian)::

    magic "GNCK" | u32 version | u32 header length | header JSON (UTF-8)
    then per parameter tensor, in layer order:
    u32 name length | name | u8 dtype tag | u8 rank | u32 dims[rank] | raw row-major data

The header JSON is ``{"network": <NetworkSpec>, "provenance": {...}}``.
Feature-map dumps reuse the per-tensor record without the header.
"""

from __future__ import annotations

import io
import json
import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO, Literal

import numpy as np
from pydantic import ValidationError

from gearnet.errors import (
    CheckpointIntegrityError,
    CheckpointVersionError,
    ConfigurationError,
    NotACheckpointError,
    TruncatedCheckpointError,
)
from gearnet.nn.tensor import DTYPE, Tensor
from gearnet.network.model import Network
from gearnet.network.spec import NetworkSpec

logger = logging.getLogger(__name__)

MAGIC = b"GNCK"
FORMAT_VERSION = 1

StorageDtype = Literal["float32", "float64"]

_DTYPE_TAGS: dict[int, np.dtype[Any]] = {1: np.dtype("<f4"), 2: np.dtype("<f8")}
_TAG_FOR: dict[str, int] = {"float32": 1, "float64": 2}


@dataclass
class Checkpoint:
    spec: NetworkSpec
    parameters: dict[str, Tensor]
    provenance: dict[str, Any] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION


# --- tensor records --------------------------------------------------------------


def _write_tensor(out: BinaryIO, name: str, tensor: Tensor, dtype: StorageDtype) -> None:
    encoded = name.encode("utf-8")
    out.write(struct.pack("<I", len(encoded)))
    out.write(encoded)
    out.write(struct.pack("<BB", _TAG_FOR[dtype], tensor.ndim))
    out.write(struct.pack(f"<{tensor.ndim}I", *tensor.shape))
    out.write(np.ascontiguousarray(tensor, dtype=_DTYPE_TAGS[_TAG_FOR[dtype]]).tobytes())


def _read_exact(src: BinaryIO, size: int, what: str) -> bytes:
    data = src.read(size)
    if len(data) != size:
        raise TruncatedCheckpointError(f"payload ended while reading {what}")
    return data


def _read_tensor(src: BinaryIO) -> tuple[str, Tensor]:
    (name_len,) = struct.unpack("<I", _read_exact(src, 4, "tensor name length"))
    name = _read_exact(src, name_len, "tensor name").decode("utf-8")
    tag, rank = struct.unpack("<BB", _read_exact(src, 2, f"{name} dtype/rank"))
    if tag not in _DTYPE_TAGS:
        raise CheckpointIntegrityError(f"{name}: unknown dtype tag {tag}")
    dims = struct.unpack(f"<{rank}I", _read_exact(src, 4 * rank, f"{name} dims"))
    dtype = _DTYPE_TAGS[tag]
    count = int(np.prod(dims)) if rank else 1
    raw = _read_exact(src, count * dtype.itemsize, f"{name} data")
    tensor = np.frombuffer(raw, dtype=dtype).reshape(dims).astype(DTYPE)
    return name, tensor


def write_tensor_file(
    path: Path | str, name: str, tensor: Tensor, dtype: StorageDtype = "float64"
) -> None:
    with open(path, "wb") as f:
        _write_tensor(f, name, tensor, dtype)


def read_tensor_file(path: Path | str) -> tuple[str, Tensor]:
    with open(path, "rb") as f:
        return _read_tensor(f)


# --- checkpoints -------------------------------------------------------------------


def encode_checkpoint(checkpoint: Checkpoint, dtype: StorageDtype = "float64") -> bytes:
    header = json.dumps(
        {"network": checkpoint.spec.model_dump(mode="json"), "provenance": checkpoint.provenance},
        sort_keys=True,
    ).encode("utf-8")
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<II", checkpoint.format_version, len(header)))
    buf.write(header)
    for name in sorted(checkpoint.parameters):
        _write_tensor(buf, name, checkpoint.parameters[name], dtype)
    return buf.getvalue()


def decode_checkpoint(data: bytes) -> Checkpoint:
    src = io.BytesIO(data)
    if src.read(4) != MAGIC:
        raise NotACheckpointError("not a checkpoint: bad magic bytes")
    version, header_len = struct.unpack("<II", _read_exact(src, 8, "version/header length"))
    if version != FORMAT_VERSION:
        raise CheckpointVersionError(
            f"checkpoint format version {version} is not supported (expected {FORMAT_VERSION})"
        )
    try:
        header = json.loads(_read_exact(src, header_len, "spec header").decode("utf-8"))
        spec = NetworkSpec.model_validate(header["network"])
    except (json.JSONDecodeError, UnicodeDecodeError, KeyError, ValidationError) as e:
        raise CheckpointIntegrityError(f"checkpoint header is malformed: {e}") from None

    expected = Network.expected_shapes_for(spec)
    parameters: dict[str, Tensor] = {}
    while len(parameters) < len(expected):
        name, tensor = _read_tensor(src)
        if name not in expected:
            raise CheckpointIntegrityError(f"tensor {name} is not declared by spec {spec.name}")
        if tensor.shape != expected[name]:
            raise CheckpointIntegrityError(
                f"tensor {name} has shape {tensor.shape}, spec requires {expected[name]}"
            )
        parameters[name] = tensor
    if src.read(1):
        raise CheckpointIntegrityError("trailing bytes after the last declared tensor")
    return Checkpoint(spec, parameters, header.get("provenance", {}), version)


def save_checkpoint(
    network: Network,
    path: Path | str,
    provenance: dict[str, Any] | None = None,
    dtype: StorageDtype = "float64",
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    checkpoint = Checkpoint(network.spec, network.parameters, provenance or {})
    path.write_bytes(encode_checkpoint(checkpoint, dtype))
    logger.info("Checkpoint %s (%s, %s) written to %s", network.spec.name, dtype,
                provenance or {}, path)
    return path


def read_checkpoint(path: Path | str) -> Checkpoint:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Checkpoint not found: {path}")
    return decode_checkpoint(path.read_bytes())


def network_from_checkpoint(checkpoint: Checkpoint) -> Network:
    try:
        return Network(checkpoint.spec, dict(checkpoint.parameters))
    except ConfigurationError as e:
        raise CheckpointIntegrityError(str(e)) from None


def load_checkpoint(path: Path | str) -> Network:
    return network_from_checkpoint(read_checkpoint(path))
