"""Tests for gearnet.orchestrator.sweep — seeds, method parsing and result files."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from gearnet.config import GearnetConfig
from gearnet.dataset import LabeledDataset
from gearnet.errors import ConfigurationError, MissingCheckpointError, SplitError
from gearnet.orchestrator.sweep import (
    RESULTS_HEADER,
    RunResult,
    load_source_checkpoint,
    mean_accuracies,
    parse_methods,
    read_results_csv,
    run_seed,
    run_sweep,
    split_seed,
    write_results_csv,
)


@pytest.fixture
def results() -> list[RunResult]:
    return [
        RunResult("transfer", 0.8, 0, 0.9),
        RunResult("local", 0.8, 0, 0.5),
        RunResult("transfer", 0.8, 1, 0.7),
        RunResult("local", 0.8, 1, 0.6),
        RunResult("transfer", 0.02, 0, 0.25),
    ]


class TestParseMethods:
    def test_comma_separated(self) -> None:
        assert parse_methods("transfer, local") == ["transfer", "local"]

    def test_sequence(self) -> None:
        assert parse_methods(["local"]) == ["local"]

    def test_unknown(self) -> None:
        with pytest.raises(ConfigurationError, match="unknown method 'svm'"):
            parse_methods("transfer,svm")


class TestSeeds:
    def test_split_seed_is_stable(self) -> None:
        assert split_seed(0, 0.05, 2) == split_seed(0, 0.05, 2)

    def test_split_seed_varies_with_repeat_and_fraction(self) -> None:
        seeds = {split_seed(0, f, r) for f in (0.8, 0.05) for r in range(3)}
        assert len(seeds) == 6

    def test_run_seed_differs_between_methods(self) -> None:
        assert run_seed(0, "transfer", 0.4, 1) != run_seed(0, "local", 0.4, 1)

    def test_base_seed_matters(self) -> None:
        assert run_seed(0, "local", 0.4, 1) != run_seed(1, "local", 0.4, 1)


class TestResults:
    def test_means_per_method_and_fraction(self, results: list[RunResult]) -> None:
        means = mean_accuracies(results)
        assert list(means) == [("transfer", 0.8), ("local", 0.8), ("transfer", 0.02)]
        assert means[("transfer", 0.8)] == pytest.approx(0.8)
        assert means[("local", 0.8)] == pytest.approx(0.55)
        assert means[("transfer", 0.02)] == pytest.approx(0.25)

    def test_csv_rows_then_means(self, results: list[RunResult], tmp_path: Path) -> None:
        path = write_results_csv(results, tmp_path / "out" / "results.csv")
        header = path.read_text().splitlines()[0]
        assert header == ",".join(RESULTS_HEADER)

        rows = read_results_csv(path)
        assert len(rows) == 5 + 3
        assert [r["repeat"] for r in rows[:5]] == ["0", "0", "1", "1", "0"]
        assert all(r["repeat"] == "mean" for r in rows[5:])
        assert rows[0]["fraction"] == "0.8"
        assert float(rows[0]["accuracy"]) == 0.9
        assert float(rows[6]["accuracy"]) == pytest.approx(0.55)

    def test_missing_results_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            read_results_csv(tmp_path / "absent.csv")


def test_missing_checkpoint_names_pretrain(tmp_path: Path) -> None:
    with pytest.raises(MissingCheckpointError, match="gearnet pretrain"):
        load_source_checkpoint(tmp_path / "absent.gnck")


def test_sweep_rejects_missing_condition(tmp_path: Path) -> None:
    dataset = LabeledDataset(np.zeros((4, 1, 1, 1)), np.array([0, 0, 2, 2]))
    with pytest.raises(SplitError, match=r"conditions \[1\]"):
        run_sweep(GearnetConfig(), dataset, ["local"], tmp_path)
