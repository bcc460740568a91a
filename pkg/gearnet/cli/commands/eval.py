"""gearnet eval — accuracy of a checkpoint on a corpus."""

from __future__ import annotations

import typer

from gearnet.cli.common import DEFAULT_CONFIG, cli_errors, console, resolve_config
from gearnet.network.checkpoint import load_checkpoint
from gearnet.network.model import evaluate_accuracy
from gearnet.observability import setup_logging
from gearnet.orchestrator.sweep import prepare_gear_dataset

app = typer.Typer()


@app.callback(invoke_without_command=True)
def eval_cmd(
    ckpt: str = typer.Option(..., "--ckpt", help="Checkpoint to evaluate"),
    data: str | None = typer.Option(None, "--data", help="Corpus directory (default: synthesize)"),
    decimate: int | None = typer.Option(None, "--decimate", help="Angle decimation factor"),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Evaluate a trained network on every record of a corpus."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        network = load_checkpoint(ckpt)
        dataset = prepare_gear_dataset(config, network.spec.input_shape, data, decimate)
        accuracy = evaluate_accuracy(network, dataset)
        console.print(f"{network.spec.name} on {len(dataset)} samples: accuracy {accuracy:.4f}")
