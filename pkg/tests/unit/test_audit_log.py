"""Tests for gearnet.supervision.audit_log — JSONL run ledger."""

from pathlib import Path

import pytest

from gearnet.supervision.audit_log import AuditLogger


@pytest.fixture
def audit(tmp_path: Path) -> AuditLogger:
    return AuditLogger(tmp_path / "test_audit.jsonl")


def test_record_and_read(audit: AuditLogger) -> None:
    audit.record("r1", "pretrain", "checkpoint_written", details={"path": "p.gnck"})
    audit.record("r1", "sweep", "run_completed", accuracy=0.91, loss=0.3, duration_ms=120)

    entries = audit.read()
    assert len(entries) == 2
    assert entries[0]["stage"] == "pretrain"
    assert entries[0]["details"] == {"path": "p.gnck"}
    assert entries[1]["accuracy"] == 0.91
    assert entries[1]["duration_ms"] == 120


def test_optional_fields_omitted(audit: AuditLogger) -> None:
    entry = audit.record("r1", "report", "protocol_completed")
    assert "accuracy" not in entry
    assert "loss" not in entry


def test_filter_by_run(audit: AuditLogger) -> None:
    audit.record("r1", "sweep", "run_completed")
    audit.record("r2", "sweep", "run_completed")
    audit.record("r1", "report", "protocol_completed")

    entries = audit.read(run_id="r1")
    assert len(entries) == 2
    assert all(e["run_id"] == "r1" for e in entries)


def test_filter_by_stage(audit: AuditLogger) -> None:
    audit.record("r1", "sweep", "run_completed")
    audit.record("r1", "report", "protocol_completed")
    assert [e["action"] for e in audit.read(stage="report")] == ["protocol_completed"]


def test_last_n(audit: AuditLogger) -> None:
    for i in range(10):
        audit.record("r1", "sweep", f"action_{i}")

    entries = audit.read(last_n=3)
    assert len(entries) == 3
    assert entries[0]["action"] == "action_7"


def test_run_ids_in_first_seen_order(audit: AuditLogger) -> None:
    for rid in ("b", "a", "b", "c"):
        audit.record(rid, "sweep", "run_completed")
    assert audit.run_ids() == ["b", "a", "c"]


def test_read_empty(audit: AuditLogger) -> None:
    assert audit.read() == []


def test_clear(audit: AuditLogger) -> None:
    audit.record("r1", "test", "action")
    assert len(audit.read()) == 1

    audit.clear()
    assert len(audit.read()) == 0


def test_entry_has_timestamp(audit: AuditLogger) -> None:
    entry = audit.record("r1", "test", "action")
    assert "ts" in entry
    assert entry["run_id"] == "r1"


def test_malformed_lines_are_skipped(audit: AuditLogger) -> None:
    audit.record("r1", "sweep", "run_completed", accuracy=0.5)
    with open(audit.path, "a") as f:
        f.write('{"run_id": "r2"}\n\n')
    audit.record("r3", "report", "protocol_completed")

    assert [e["run_id"] for e in audit.read()] == ["r1", "r3"]


def test_clear_without_file(audit: AuditLogger) -> None:
    audit.clear()
    assert audit.read() == []
