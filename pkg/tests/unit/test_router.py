"""Tests for gearnet.orchestrator.router — conditional edge routing."""

from pathlib import Path

from gearnet.orchestrator.router import route_pretrain, route_sweep
from gearnet.orchestrator.state import ProtocolState, ProtocolStatus


class TestRoutePretrain:
    def test_pretrain_when_checkpoint_missing(self, tmp_path: Path) -> None:
        state = {"dataset_size": 36, "methods": ["transfer"],
                 "checkpoint_path": str(tmp_path / "absent.gnck")}
        assert route_pretrain(state) == "pretrain"

    def test_skip_when_checkpoint_exists(self, tmp_path: Path) -> None:
        ckpt = tmp_path / "p.gnck"
        ckpt.write_bytes(b"GNCK")
        state = {"dataset_size": 36, "methods": ["transfer", "local"], "checkpoint_path": str(ckpt)}
        assert route_pretrain(state) == "skip"

    def test_force_pretrain(self, tmp_path: Path) -> None:
        ckpt = tmp_path / "p.gnck"
        ckpt.write_bytes(b"GNCK")
        state = {"dataset_size": 36, "methods": ["transfer"], "checkpoint_path": str(ckpt),
                 "force_pretrain": True}
        assert route_pretrain(state) == "pretrain"

    def test_skip_for_local_only(self) -> None:
        assert route_pretrain({"dataset_size": 36, "methods": ["local"]}) == "skip"

    def test_abort_on_failure(self) -> None:
        state = {"dataset_size": 36, "methods": ["local"], "status": "failed"}
        assert route_pretrain(state) == "abort"

    def test_abort_on_empty_dataset(self) -> None:
        assert route_pretrain({"dataset_size": 0, "methods": ["local"]}) == "abort"

    def test_accepts_protocol_state_dict(self) -> None:
        state = ProtocolState(run_id="r1", methods=["local"], dataset_size=9).as_dict()
        assert state["status"] == ProtocolStatus.PENDING
        assert route_pretrain(state) == "skip"


class TestRouteSweep:
    def test_sweep_with_checkpoint(self, tmp_path: Path) -> None:
        ckpt = tmp_path / "p.gnck"
        ckpt.write_bytes(b"GNCK")
        assert route_sweep({"methods": ["transfer"], "checkpoint_path": str(ckpt)}) == "sweep"

    def test_abort_without_checkpoint(self, tmp_path: Path) -> None:
        state = {"methods": ["transfer"], "checkpoint_path": str(tmp_path / "absent.gnck")}
        assert route_sweep(state) == "abort"

    def test_local_needs_no_checkpoint(self) -> None:
        assert route_sweep({"methods": ["local"]}) == "sweep"

    def test_abort_on_failure(self) -> None:
        assert route_sweep({"methods": ["local"], "status": ProtocolStatus.FAILED}) == "abort"
