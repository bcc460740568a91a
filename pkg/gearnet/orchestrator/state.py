"""Protocol state passed through the LangGraph experiment pipeline."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any


class ProtocolStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class ProtocolState:
    """Everything the protocol nodes read and write; carried as a plain dict in the graph."""

    run_id: str
    methods: list[str] = field(default_factory=lambda: ["transfer", "local"])
    data_dir: str | None = None
    out_dir: str = "runs"
    decimate: int | None = None
    force_pretrain: bool = False
    checkpoint_path: str = ""
    dataset: Any = None
    dataset_size: int = 0
    pretrained: bool = False
    results_path: str = ""
    summary: dict[str, float] = field(default_factory=dict)
    status: ProtocolStatus = ProtocolStatus.PENDING
    error: str = ""

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)
