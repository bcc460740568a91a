"""Integration tests — transplant exactness, the sweep and the protocol graph end to end."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from gearnet.config import GearnetConfig, load_config
from gearnet.dataset import LabeledDataset
from gearnet.network.checkpoint import read_checkpoint
from gearnet.network.model import layer_index_of
from gearnet.network.spec import get_spec
from gearnet.orchestrator.graph import build_protocol
from gearnet.orchestrator.state import ProtocolState, ProtocolStatus
from gearnet.orchestrator.sweep import (
    prepare_gear_dataset,
    pretrain,
    read_results_csv,
    run_sweep,
    train_transfer,
)
from gearnet.signals.split import DatasetSplit, split_dataset
from gearnet.supervision.audit_log import AuditLogger

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def small_config(tmp_path: Path) -> GearnetConfig:
    config = load_config(FIXTURES / "gearnet_small.yaml")
    config.experiment.checkpoint = str(tmp_path / "pretrained.gnck")
    config.outputs.audit_log = str(tmp_path / "audit.jsonl")
    return config


@pytest.fixture
def audit(tmp_path: Path) -> AuditLogger:
    return AuditLogger(tmp_path / "audit.jsonl")


@pytest.fixture(scope="module")
def gear_images() -> LabeledDataset:
    config = load_config(FIXTURES / "gearnet_small.yaml")
    return prepare_gear_dataset(config, get_spec("mini").input_shape)


class TestTransplantExactness:
    def test_frozen_stages_survive_training(
        self, small_config: GearnetConfig, gear_images: LabeledDataset
    ) -> None:
        pretrain(small_config, small_config.experiment.checkpoint)
        source = read_checkpoint(small_config.experiment.checkpoint)
        small_config.experiment.freeze_transferred = True
        small_config.experiment.epochs = 2

        train, _ = split_dataset(gear_images, DatasetSplit.from_fraction(0.5, 0, 4))
        network, history = train_transfer(small_config, source, train, seed=9)

        assert len(history) > 0
        for name, tensor in network.parameters.items():
            if layer_index_of(name) <= 8:
                assert_array_equal(tensor, source.parameters[name])
            elif name.endswith(".weights") and name in source.parameters:
                assert not np.array_equal(tensor, source.parameters[name])


class TestSweep:
    def test_row_counts_and_determinism(
        self, small_config: GearnetConfig, gear_images: LabeledDataset, tmp_path: Path
    ) -> None:
        small_config.experiment.repeats = 2
        small_config.experiment.epochs = 1
        pretrain(small_config, small_config.experiment.checkpoint)
        source = read_checkpoint(small_config.experiment.checkpoint)

        first = run_sweep(
            small_config, gear_images, ["transfer", "local"], tmp_path / "a", source=source
        )
        second = run_sweep(
            small_config, gear_images, ["transfer", "local"], tmp_path / "b", source=source
        )

        rows = read_results_csv(tmp_path / "a" / "results.csv")
        assert len(rows) == 4 + 2
        assert [r.accuracy for r in first] == [r.accuracy for r in second]
        assert (tmp_path / "a" / "results.csv").read_bytes() == (
            tmp_path / "b" / "results.csv"
        ).read_bytes()
        assert len(list((tmp_path / "a" / "histories").glob("*.csv"))) == 4

    def test_mean_rows_are_exact_means(
        self, small_config: GearnetConfig, gear_images: LabeledDataset, tmp_path: Path
    ) -> None:
        small_config.experiment.repeats = 2
        results = run_sweep(small_config, gear_images, ["local"], tmp_path)
        rows = read_results_csv(tmp_path / "results.csv")
        mean_row = next(r for r in rows if r["repeat"] == "mean")
        assert float(mean_row["accuracy"]) == float(np.mean([r.accuracy for r in results]))


class TestProtocolGraph:
    def test_full_protocol_completes(
        self, small_config: GearnetConfig, audit: AuditLogger, tmp_path: Path
    ) -> None:
        compiled = build_protocol(small_config, audit=audit).compile()
        state = ProtocolState(
            run_id="test-001",
            out_dir=str(tmp_path / "runs"),
            checkpoint_path=small_config.experiment.checkpoint,
        )
        final = compiled.invoke(state.as_dict())

        assert final["status"] == ProtocolStatus.COMPLETED.value
        assert final["dataset_size"] == 36
        assert final["pretrained"] is True
        assert set(final["summary"]) == {"transfer@0.5", "local@0.5"}
        assert Path(small_config.experiment.checkpoint).exists()
        stages = [e["stage"] for e in audit.read(run_id="test-001")]
        assert stages[0] == "synthesize"
        assert "pretrain" in stages
        assert stages[-1] == "report"

    def test_existing_checkpoint_skips_pretraining(
        self, small_config: GearnetConfig, audit: AuditLogger, tmp_path: Path
    ) -> None:
        pretrain(small_config, small_config.experiment.checkpoint)
        compiled = build_protocol(small_config, audit=audit).compile()
        state = ProtocolState(
            run_id="test-002",
            out_dir=str(tmp_path / "runs"),
            checkpoint_path=small_config.experiment.checkpoint,
        )
        final = compiled.invoke(state.as_dict())

        assert final["status"] == ProtocolStatus.COMPLETED.value
        assert final["pretrained"] is False

    def test_local_only_needs_no_checkpoint(
        self, small_config: GearnetConfig, tmp_path: Path
    ) -> None:
        compiled = build_protocol(small_config).compile()
        state = ProtocolState(
            run_id="test-003",
            methods=["local"],
            out_dir=str(tmp_path / "runs"),
            checkpoint_path=small_config.experiment.checkpoint,
        )
        final = compiled.invoke(state.as_dict())

        assert final["status"] == ProtocolStatus.COMPLETED.value
        assert not Path(small_config.experiment.checkpoint).exists()
        assert list(final["summary"]) == ["local@0.5"]

    def test_missing_corpus_fails_cleanly(
        self, small_config: GearnetConfig, tmp_path: Path
    ) -> None:
        compiled = build_protocol(small_config).compile()
        state = ProtocolState(
            run_id="test-004",
            data_dir=str(tmp_path / "no-corpus"),
            checkpoint_path=small_config.experiment.checkpoint,
        )
        final = compiled.invoke(state.as_dict())

        assert final["status"] == ProtocolStatus.FAILED.value
        assert final["error"].startswith("synthesize:")
