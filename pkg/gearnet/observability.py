"""Logging setup and optional Langfuse tracing of training runs.

Tracing degrades to a no-op when Langfuse is not configured.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Generator
from contextlib import contextmanager
from typing import Any

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_langfuse_client: Any = None
_enabled: bool | None = None


def setup_logging(verbose: bool = False) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT)


def is_enabled() -> bool:
    """Check if Langfuse is configured and available."""
    global _enabled
    if _enabled is not None:
        return _enabled

    public_key = os.environ.get("LANGFUSE_PUBLIC_KEY", "")
    secret_key = os.environ.get("LANGFUSE_SECRET_KEY", "")
    _enabled = bool(public_key and secret_key)

    if not _enabled:
        logger.debug("Langfuse not configured, run tracing disabled")

    return _enabled


def get_client() -> Any:
    """Get or create the Langfuse client."""
    global _langfuse_client
    if _langfuse_client is None and is_enabled():
        try:
            from langfuse import Langfuse

            _langfuse_client = Langfuse()
            logger.info("Langfuse client initialized")
        except Exception as e:
            logger.warning("Failed to initialize Langfuse: %s", e)
    return _langfuse_client


@contextmanager
def trace_run(run_id: str, kind: str = "", **metadata: Any) -> Generator[Any, None, None]:
    """Create a Langfuse trace for one training or sweep run."""
    client = get_client()
    if client is None:
        yield None
        return

    trace = None
    try:
        trace = client.trace(
            name=f"gearnet-{kind or 'run'}-{run_id}",
            metadata={"run_id": run_id, "kind": kind, **metadata},
        )
    except Exception as e:
        logger.warning("Langfuse trace error: %s", e)
    try:
        # errors from the traced body propagate; only trace creation is swallowed
        yield trace
    finally:
        try:
            client.flush()
        except Exception:
            pass


def record_metrics(
    run_id: str,
    name: str,
    metrics: dict[str, float],
    trace: Any = None,
) -> None:
    """Attach a metrics event (accuracy, loss, ...) to a run trace."""
    client = get_client()
    if client is None or trace is None:
        return

    try:
        trace.event(name=name, metadata={"run_id": run_id, **metrics})
    except Exception as e:
        logger.debug("Langfuse metrics recording failed: %s", e)
