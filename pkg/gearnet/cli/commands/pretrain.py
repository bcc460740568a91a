"""gearnet pretrain — train a network on the source task and write its checkpoint."""

from __future__ import annotations

import typer

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config
from gearnet.network.spec import get_spec
from gearnet.observability import setup_logging
from gearnet.orchestrator.sweep import prepare_gear_dataset, pretrain

app = typer.Typer()


@app.callback(invoke_without_command=True)
def pretrain_cmd(
    arch: str | None = typer.Option(
        None, "--arch", help="Architecture (default: experiment.arch_name)"
    ),
    data: str | None = typer.Option(
        None, "--data", help="Corpus directory (default: source task)"
    ),
    epochs: int | None = typer.Option(None, "--epochs", help="Training epochs"),
    batch: int | None = typer.Option(None, "--batch", help="Mini-batch size"),
    lr: float | None = typer.Option(None, "--lr", help="Learning rate"),
    momentum: float | None = typer.Option(None, "--momentum", help="Momentum"),
    out: str | None = typer.Option(
        None, "--out", help="Checkpoint path (default: experiment.checkpoint)"
    ),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Pretrain a network whose first layers are later transplanted."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        overrides = {
            k: v
            for k, v in {
                "epochs": epochs,
                "batch_size": batch,
                "learning_rate": lr,
                "momentum": momentum,
            }.items()
            if v is not None
        }
        config.pretrain = config.pretrain.model_copy(update=overrides)
        arch = arch or config.experiment.arch_name
        dataset = None
        if data:
            dataset = prepare_gear_dataset(config, get_spec(arch).input_shape, data)
        target = out or config.experiment.checkpoint
        _, history = pretrain(config, target, arch, dataset, audit=audit_logger(config))
        console.print(
            f"[green]Checkpoint written to {target}[/green] "
            f"(final mini-batch loss {history[-1].loss:.4f})"
        )
