"""Conditional edge routing functions for the protocol graph.

Each router inspects the state dict and returns a string key that maps to
the next node.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from gearnet.orchestrator.state import ProtocolStatus


def _failed(state: dict[str, Any]) -> bool:
    status = state.get("status", "")
    return status == ProtocolStatus.FAILED or status == "failed"


def route_pretrain(state: dict[str, Any]) -> str:
    """After synthesis: pretrain, reuse an existing checkpoint, or abort."""
    if _failed(state) or not state.get("dataset_size"):
        return "abort"
    if "transfer" not in state.get("methods", []):
        return "skip"
    checkpoint = state.get("checkpoint_path", "")
    if state.get("force_pretrain") or not checkpoint or not Path(checkpoint).exists():
        return "pretrain"
    return "skip"


def route_sweep(state: dict[str, Any]) -> str:
    """Before the sweep: run it, or abort when transfer still lacks a checkpoint."""
    if _failed(state):
        return "abort"
    if "transfer" in state.get("methods", []):
        checkpoint = state.get("checkpoint_path", "")
        if not checkpoint or not Path(checkpoint).exists():
            return "abort"
    return "sweep"
