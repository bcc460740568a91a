"""Append-only JSONL ledger of experiment runs.

Each line is one validated ``LedgerEntry``. Unset metrics are omitted from
the line rather than written as null.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class LedgerEntry(BaseModel):
    ts: str = Field(default_factory=_now)
    run_id: str
    stage: str
    action: str
    details: dict[str, Any] = Field(default_factory=dict)
    accuracy: float | None = None
    loss: float | None = None
    duration_ms: int | None = None


class AuditLogger:
    """Writes run events (pretrain, sweep runs, protocol reports) and reads them back filtered."""

    def __init__(self, path: str | Path = "runs/audit.jsonl"):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def record(
        self,
        run_id: str,
        stage: str,
        action: str,
        details: dict[str, Any] | None = None,
        accuracy: float | None = None,
        loss: float | None = None,
        duration_ms: int | None = None,
    ) -> dict[str, Any]:
        entry = LedgerEntry(
            run_id=run_id,
            stage=stage,
            action=action,
            details=details or {},
            accuracy=accuracy,
            loss=loss,
            duration_ms=duration_ms,
        )
        with open(self.path, "a") as f:
            f.write(entry.model_dump_json(exclude_none=True) + "\n")
        return entry.model_dump(exclude_none=True)

    def _entries(self) -> Iterator[LedgerEntry]:
        if not self.path.exists():
            return
        with open(self.path) as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    yield LedgerEntry.model_validate_json(line)
                except ValidationError as e:
                    logger.warning("%s:%d: skipping malformed line: %s", self.path, lineno, e)

    def read(
        self,
        last_n: int | None = None,
        run_id: str | None = None,
        stage: str | None = None,
    ) -> list[dict[str, Any]]:
        """Entries in write order, filtered by run and stage, then limited to the last n."""
        entries = [
            e.model_dump(exclude_none=True)
            for e in self._entries()
            if (not run_id or e.run_id == run_id) and (not stage or e.stage == stage)
        ]
        return entries[-last_n:] if last_n is not None else entries

    def run_ids(self) -> list[str]:
        """Distinct run ids in first-seen order."""
        return list(dict.fromkeys(e.run_id for e in self._entries()))

    def clear(self) -> None:
        self.path.unlink(missing_ok=True)
