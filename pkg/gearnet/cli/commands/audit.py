"""gearnet audit — view and filter the run ledger."""

from __future__ import annotations

import json

import typer
from rich.syntax import Syntax

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config

app = typer.Typer()


@app.callback(invoke_without_command=True)
def audit(
    last: int = typer.Option(20, "--last", help="Number of recent entries to show"),
    run_id: str = typer.Option("", "--run-id", help="Filter by run ID"),
    stage: str = typer.Option("", "--stage", help="Filter by stage"),
    raw: bool = typer.Option(False, "--raw", help="Output raw JSONL"),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
) -> None:
    """View the gearnet audit log."""
    with cli_errors():
        config = resolve_config(config_path)
    entries = audit_logger(config).read(last_n=last, run_id=run_id or None, stage=stage or None)

    if not entries:
        console.print("[yellow]No audit entries found.[/yellow]")
        raise typer.Exit()

    if raw:
        for e in entries:
            print(json.dumps(e))
    else:
        for e in entries:
            console.print(Syntax(json.dumps(e, indent=2), "json", theme="monokai"))
            console.print()
