"""Helpers shared by the CLI commands."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from pydantic import ValidationError
from rich.console import Console

from gearnet.config import GearnetConfig, load_config
from gearnet.errors import GearnetError
from gearnet.supervision.audit_log import AuditLogger

DEFAULT_CONFIG = "gearnet.yaml"

console = Console()


def resolve_config(config_path: str = DEFAULT_CONFIG) -> GearnetConfig:
    """Load ``config_path``; a missing default file means built-in defaults."""
    if config_path == DEFAULT_CONFIG and not Path(config_path).exists():
        return GearnetConfig()
    return load_config(config_path)


def audit_logger(config: GearnetConfig) -> AuditLogger:
    return AuditLogger(config.outputs.audit_log)


def one_line(error: BaseException) -> str:
    return " ".join(str(error).split())


@contextmanager
def cli_errors() -> Iterator[None]:
    """Turn domain, file and config errors into a one-line red diagnostic and exit code 1."""
    try:
        yield
    except ValidationError as e:
        console.print(f"Invalid configuration: {one_line(e)}", style="red", markup=False)
        raise typer.Exit(1) from None
    except (GearnetError, FileNotFoundError) as e:
        console.print(one_line(e), style="red", markup=False)
        raise typer.Exit(1) from None
