"""gearnet sweep — training-fraction sweep over transfer and local methods."""

from __future__ import annotations

import typer
from rich.table import Table

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config
from gearnet.network.spec import get_spec
from gearnet.observability import setup_logging
from gearnet.orchestrator.sweep import (
    load_source_checkpoint,
    mean_accuracies,
    parse_methods,
    prepare_gear_dataset,
    run_sweep,
)

app = typer.Typer()


@app.callback(invoke_without_command=True)
def sweep(
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    methods: str = typer.Option("transfer,local", "--methods", help="Comma-separated methods"),
    decimate: int | None = typer.Option(None, "--decimate", help="Angle decimation factor"),
    out: str | None = typer.Option(None, "--out", help="Output directory (default: runs_dir)"),
    data: str | None = typer.Option(None, "--data", help="Corpus directory (default: synthesize)"),
    checkpoint: str | None = typer.Option(
        None, "--checkpoint", help="Pretrained checkpoint (default: experiment.checkpoint)"
    ),
    save_networks: bool = typer.Option(False, "--save-networks", help="Keep every trained net"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Train and evaluate every (fraction, repeat, method) and write results.csv."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        chosen = parse_methods(methods)
        source = None
        if "transfer" in chosen:
            source = load_source_checkpoint(checkpoint or config.experiment.checkpoint)
        dataset = prepare_gear_dataset(
            config, get_spec(config.experiment.arch_name).input_shape, data, decimate
        )
        out_dir = out or config.outputs.runs_dir
        results = run_sweep(
            config,
            dataset,
            chosen,
            out_dir,
            source=source,
            audit=audit_logger(config),
            save_networks=save_networks,
        )

        table = Table(title="Mean validation accuracy")
        table.add_column("Method", style="cyan")
        table.add_column("Fraction", justify="right")
        table.add_column("Accuracy", justify="right")
        for (method, fraction), mean in mean_accuracies(results).items():
            table.add_row(method, f"{fraction:g}", f"{mean:.4f}")
        console.print(table)
        console.print(f"[green]{len(results)} runs written to {out_dir}/results.csv[/green]")
