"""gearnet init — write the configuration template into the working directory."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import typer

from gearnet.cli.common import DEFAULT_CONFIG, console

app = typer.Typer()


@app.callback(invoke_without_command=True)
def init(
    arch: str = typer.Option("mini", "--arch", help="Transfer architecture to configure"),
    non_interactive: bool = typer.Option(False, "--non-interactive", help="Skip prompts"),
) -> None:
    """Initialize gearnet in the current directory."""
    target = Path(DEFAULT_CONFIG)

    if target.exists() and not non_interactive:
        overwrite = typer.confirm(f"{target} already exists. Overwrite?", default=False)
        if not overwrite:
            console.print("[yellow]Aborted.[/yellow]")
            raise typer.Exit()

    template = resources.files("gearnet.templates.configs") / "gearnet.yaml"
    config_text = template.read_text()
    config_text = config_text.replace('arch_name: "mini"', f'arch_name: "{arch}"')
    if arch == "paper-24":
        config_text = config_text.replace(
            'local_arch_name: "mini-local"', 'local_arch_name: "local-cnn"'
        )

    target.write_text(config_text)
    console.print(f"[green]Created {target}[/green]")

    runs_dir = Path("runs")
    runs_dir.mkdir(exist_ok=True)
    console.print(f"[green]Created {runs_dir}/ directory[/green]")
    console.print("\n[bold]gearnet initialized![/bold] Edit gearnet.yaml, then `gearnet run`.")
