"""gearnet transfer-train — transplant pretrained layers and fine-tune on the gear corpus."""

from __future__ import annotations

import typer

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config
from gearnet.network.checkpoint import save_checkpoint
from gearnet.network.model import evaluate_accuracy
from gearnet.network.spec import get_spec
from gearnet.observability import setup_logging
from gearnet.optim.trainer import write_history_csv
from gearnet.orchestrator.sweep import (
    load_source_checkpoint,
    new_run_id,
    prepare_gear_dataset,
    train_transfer,
)
from gearnet.signals.split import DatasetSplit, min_condition_count, split_dataset

app = typer.Typer()


@app.callback(invoke_without_command=True)
def transfer_train(
    source: str = typer.Option(..., "--from", help="Pretrained checkpoint"),
    arch: str = typer.Option("mini", "--arch", help="Target architecture"),
    lr_transferred: float = typer.Option(1e-4, "--lr-transferred", help="Transplanted-layer rate"),
    lr_new: float = typer.Option(1e-2, "--lr-new", help="New-layer rate"),
    freeze: bool = typer.Option(False, "--freeze", help="Keep transplanted layers fixed"),
    n_layers: int | None = typer.Option(None, "--n-layers", help="Layers to transplant"),
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
    """Fine-tune a transplanted network and report validation accuracy."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        exp = config.experiment
        exp.arch_name = arch
        exp.lr_transferred = lr_transferred
        exp.lr_new = lr_new
        exp.freeze_transferred = freeze
        if n_layers is not None:
            exp.n_transfer_layers = n_layers
        if epochs is not None:
            exp.epochs = epochs

        checkpoint = load_source_checkpoint(source)
        dataset = prepare_gear_dataset(config, get_spec(arch).input_shape, data, decimate)
        per_condition = min_condition_count(dataset.labels)
        train_set, validation = split_dataset(
            dataset, DatasetSplit.from_fraction(fraction, seed, per_condition)
        )
        network, entries = train_transfer(config, checkpoint, train_set, seed)
        accuracy = evaluate_accuracy(network, validation)

        audit_logger(config).record(
            new_run_id(),
            "transfer-train",
            "run_completed",
            {"arch": arch, "source": source, "fraction": fraction, "freeze": freeze},
            accuracy=accuracy,
            loss=entries[-1].loss,
        )
        if history:
            write_history_csv(entries, history)
        if out:
            save_checkpoint(network, out, provenance={"method": "transfer", "source": source})
        console.print(
            f"[green]{arch}[/green] ({exp.n_transfer_layers} layers from {source}) fraction "
            f"{fraction:g}: {len(train_set)} train / {len(validation)} validation, "
            f"accuracy {accuracy:.4f}"
        )
