"""gearnet gradcheck — finite-difference check of every layer and of a whole network."""

from __future__ import annotations

import numpy as np
import typer
from rich.table import Table

from gearnet.cli.common import cli_errors, console
from gearnet.network.gradcheck import check_network_gradients
from gearnet.network.model import build_network
from gearnet.network.spec import get_spec
from gearnet.nn.gradcheck import LAYER_KINDS, check_layer_gradients
from gearnet.observability import setup_logging

app = typer.Typer()


@app.callback(invoke_without_command=True)
def gradcheck(
    arch: str = typer.Option("mini", "--arch", help="Architecture for the whole-network check"),
    eps: float = typer.Option(1e-5, "--eps", help="Central-difference step"),
    tol: float = typer.Option(1e-4, "--tol", help="Largest accepted relative error"),
    shapes: int = typer.Option(20, "--shapes", help="Random shapes per layer kind"),
    coords: int = typer.Option(4, "--coords", help="Sampled coordinates per parameter tensor"),
    seed: int = typer.Option(0, "--seed", help="Shape and input seed"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Compare backprop against central differences; exit 1 if any error exceeds --tol."""
    setup_logging(verbose)
    with cli_errors():
        rng = np.random.default_rng(seed)
        table = Table(title=f"Gradient check (eps={eps:g}, tol={tol:g})")
        table.add_column("Check", style="cyan")
        table.add_column("Cases", justify="right")
        table.add_column("Max relative error", justify="right")
        table.add_column("Result")

        failed = False
        for kind in LAYER_KINDS:
            worst = 0.0
            for _ in range(shapes):
                worst = max(worst, *check_layer_gradients(kind, rng, eps).values())
            failed |= _add_row(table, kind, shapes, worst, tol)

        spec = get_spec(arch)
        network = build_network(spec, init_seed=seed)
        x = rng.standard_normal(spec.input_shape)
        label = int(rng.integers(spec.num_classes))
        errors = check_network_gradients(network, x, label, eps, coords, rng)
        network_tol = max(tol, 1e-3)
        failed |= _add_row(table, f"network {arch}", len(errors), max(errors.values()), network_tol)

        console.print(table)
        if failed:
            raise typer.Exit(1)


def _add_row(table: Table, name: str, cases: int, worst: float, tol: float) -> bool:
    ok = worst < tol
    verdict = "[green]pass[/green]" if ok else "[red]FAIL[/red]"
    table.add_row(name, str(cases), f"{worst:.2e}", verdict)
    return not ok
