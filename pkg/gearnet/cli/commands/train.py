"""gearnet train — scratch-train the local CNN on one training fraction."""

from __future__ import annotations

import typer

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config
from gearnet.network.checkpoint import save_checkpoint
from gearnet.network.model import evaluate_accuracy
from gearnet.network.spec import get_spec
from gearnet.observability import setup_logging
from gearnet.optim.trainer import write_history_csv
from gearnet.orchestrator.sweep import new_run_id, prepare_gear_dataset, train_local
from gearnet.signals.split import DatasetSplit, min_condition_count, split_dataset

app = typer.Typer()


@app.callback(invoke_without_command=True)
def train(
    arch: str = typer.Option("mini-local", "--arch", help="Scratch-trained architecture"),
    data: str | None = typer.Option(None, "--data", help="Corpus directory (default: synthesize)"),
    fraction: float = typer.Option(0.05, "--fraction", help="Training fraction per condition"),
    seed: int = typer.Option(0, "--seed", help="Split, init and shuffle seed"),
    epochs: int | None = typer.Option(None, "--epochs", help="Training epochs"),
    decimate: int | None = typer.Option(None, "--decimate", help="Angle decimation factor"),
    out: str | None = typer.Option(None, "--out", help="Checkpoint path for the trained network"),
    history: str | None = typer.Option(None, "--history", help="History CSV path"),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Train the local baseline and report validation accuracy."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        config.experiment.local_arch_name = arch
        if epochs is not None:
            config.experiment.epochs = epochs
        dataset = prepare_gear_dataset(config, get_spec(arch).input_shape, data, decimate)
        per_condition = min_condition_count(dataset.labels)
        train_set, validation = split_dataset(
            dataset, DatasetSplit.from_fraction(fraction, seed, per_condition)
        )
        network, entries = train_local(config, train_set, seed)
        accuracy = evaluate_accuracy(network, validation)

        run_id = new_run_id()
        audit_logger(config).record(
            run_id,
            "train",
            "run_completed",
            {"arch": arch, "fraction": fraction, "seed": seed},
            accuracy=accuracy,
            loss=entries[-1].loss,
        )
        if history:
            write_history_csv(entries, history)
        if out:
            save_checkpoint(network, out, provenance={"method": "local", "fraction": fraction})
        console.print(
            f"[green]{arch}[/green] fraction {fraction:g}: "
            f"{len(train_set)} train / {len(validation)} validation, accuracy {accuracy:.4f}"
        )
