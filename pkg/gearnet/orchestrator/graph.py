"""LangGraph state machine for the full experimental protocol.

synthesize → (pretrain | skip) → sweep → report, with conditional edges
that skip pretraining when a checkpoint exists or transfer is not requested,
and stop early on failure.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

from langgraph.graph import END, StateGraph

from gearnet.config import GearnetConfig
from gearnet.errors import GearnetError
from gearnet.network.spec import get_spec
from gearnet.orchestrator.router import route_pretrain, route_sweep
from gearnet.orchestrator.state import ProtocolStatus
from gearnet.orchestrator.sweep import (
    load_source_checkpoint,
    mean_accuracies,
    prepare_gear_dataset,
    pretrain,
    run_sweep,
)
from gearnet.supervision.audit_log import AuditLogger

logger = logging.getLogger(__name__)

Node = Callable[[dict[str, Any]], dict[str, Any]]


def _guarded(name: str, body: Node) -> Node:
    """Run a node body; a GearnetError marks the protocol failed instead of raising."""

    def node(state: dict[str, Any]) -> dict[str, Any]:
        logger.info("[protocol:%s] starting", name)
        try:
            updates = body(state)
        except (GearnetError, FileNotFoundError) as e:
            logger.error("[protocol:%s] %s", name, e)
            return {**state, "status": ProtocolStatus.FAILED.value, "error": f"{name}: {e}"}
        return {**state, **updates}

    node.__name__ = f"node_{name}"
    return node


def build_protocol(config: GearnetConfig, audit: AuditLogger | None = None) -> StateGraph:
    """Construct the protocol graph; compile and invoke it with a ProtocolState dict."""
    arch_spec = get_spec(config.experiment.arch_name, 9)

    def synthesize(state: dict[str, Any]) -> dict[str, Any]:
        dataset = prepare_gear_dataset(
            config, arch_spec.input_shape, state.get("data_dir"), state.get("decimate")
        )
        if audit is not None:
            audit.record(state["run_id"], "synthesize", "dataset_ready", {"samples": len(dataset)})
        return {
            "dataset": dataset,
            "dataset_size": len(dataset),
            "status": ProtocolStatus.RUNNING.value,
        }

    def pretrain_node(state: dict[str, Any]) -> dict[str, Any]:
        pretrain(config, state["checkpoint_path"], audit=audit, run_id=state["run_id"])
        return {"pretrained": True}

    def sweep(state: dict[str, Any]) -> dict[str, Any]:
        source = None
        if "transfer" in state["methods"]:
            source = load_source_checkpoint(state["checkpoint_path"])
        out_dir = Path(state["out_dir"])
        results = run_sweep(
            config,
            state["dataset"],
            state["methods"],
            out_dir,
            source=source,
            audit=audit,
            run_id=state["run_id"],
        )
        summary = {
            f"{method}@{fraction:g}": mean
            for (method, fraction), mean in mean_accuracies(results).items()
        }
        return {"results_path": str(out_dir / "results.csv"), "summary": summary}

    def report(state: dict[str, Any]) -> dict[str, Any]:
        if state.get("status") == ProtocolStatus.FAILED.value:
            return {"dataset": None}
        for key, mean in state.get("summary", {}).items():
            logger.info("mean validation accuracy %s: %.4f", key, mean)
        if audit is not None:
            audit.record(
                state["run_id"], "report", "protocol_completed", dict(state.get("summary", {}))
            )
        return {"status": ProtocolStatus.COMPLETED.value, "dataset": None}

    graph = StateGraph(dict)

    graph.add_node("synthesize", _guarded("synthesize", synthesize))
    graph.add_node("pretrain", _guarded("pretrain", pretrain_node))
    graph.add_node("sweep", _guarded("sweep", sweep))
    graph.add_node("report", _guarded("report", report))

    graph.set_entry_point("synthesize")

    graph.add_conditional_edges(
        "synthesize",
        route_pretrain,
        {"pretrain": "pretrain", "skip": "sweep", "abort": END},
    )

    graph.add_conditional_edges(
        "pretrain",
        route_sweep,
        {"sweep": "sweep", "abort": END},
    )

    graph.add_edge("sweep", "report")
    graph.add_edge("report", END)

    return graph
