"""gearnet status — tabulate recent runs from the audit ledger."""

from __future__ import annotations

from typing import Any

import typer
from rich.table import Table

from gearnet.cli.common import DEFAULT_CONFIG, audit_logger, cli_errors, console, resolve_config

app = typer.Typer()


@app.callback(invoke_without_command=True)
def status(
    run_id: str = typer.Option("", "--run-id", help="Filter by run ID"),
    last: int = typer.Option(50, "--last", help="Number of recent entries to consider"),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
) -> None:
    """Show the state of recent runs."""
    with cli_errors():
        config = resolve_config(config_path)
    entries = audit_logger(config).read(last_n=last, run_id=run_id or None)

    if not entries:
        console.print("[yellow]No run activity found.[/yellow]")
        console.print("Run `gearnet run` to start the protocol.")
        raise typer.Exit()

    runs: dict[str, list[dict[str, Any]]] = {}
    for e in entries:
        runs.setdefault(e.get("run_id", "unknown"), []).append(e)

    for rid, events in runs.items():
        table = Table(title=f"Run: {rid}")
        table.add_column("Time", style="dim")
        table.add_column("Stage", style="cyan")
        table.add_column("Action")
        table.add_column("Details")
        table.add_column("Accuracy", justify="right")

        for e in events:
            details = e.get("details", {})
            summary = " ".join(f"{k}={v}" for k, v in details.items() if k != "provenance")
            acc = f"{e['accuracy']:.4f}" if e.get("accuracy") is not None else "-"
            ts = e.get("ts", "")[:19]
            table.add_row(ts, e.get("stage", ""), e.get("action", ""), summary, acc)

        console.print(table)
        console.print()
