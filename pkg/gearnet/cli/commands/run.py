"""gearnet run — execute the whole protocol: data, pretraining, sweep, report."""

from __future__ import annotations

import typer

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config
from gearnet.observability import setup_logging
from gearnet.orchestrator.graph import build_protocol
from gearnet.orchestrator.state import ProtocolState, ProtocolStatus
from gearnet.orchestrator.sweep import new_run_id, parse_methods

app = typer.Typer()


@app.callback(invoke_without_command=True)
def run(
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    data: str | None = typer.Option(None, "--data", help="Corpus directory (default: synthesize)"),
    methods: str = typer.Option("transfer,local", "--methods", help="Comma-separated methods"),
    decimate: int | None = typer.Option(None, "--decimate", help="Angle decimation factor"),
    out: str | None = typer.Option(None, "--out", help="Output directory (default: runs_dir)"),
    force_pretrain: bool = typer.Option(
        False, "--force-pretrain", help="Pretrain even if the checkpoint exists"
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Run the experiment protocol end to end."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        state = ProtocolState(
            run_id=new_run_id(),
            methods=list(parse_methods(methods)),
            data_dir=data,
            out_dir=out or config.outputs.runs_dir,
            decimate=decimate,
            force_pretrain=force_pretrain,
            checkpoint_path=config.experiment.checkpoint,
        )
        console.print(f"[bold]Protocol {state.run_id}[/bold] methods={','.join(state.methods)}")

        compiled = build_protocol(config, audit=audit_logger(config)).compile()
        final = compiled.invoke(state.as_dict())

    if final.get("status") != ProtocolStatus.COMPLETED.value:
        error = final.get("error", "unknown")
        console.print(f"Protocol failed: {error}", style="red", markup=False)
        raise typer.Exit(1)

    console.print("\n[bold green]Protocol complete![/bold green]")
    console.print(f"  Results: {final.get('results_path', 'N/A')}")
    for key, mean in final.get("summary", {}).items():
        console.print(f"    {key}: {mean:.4f}")
