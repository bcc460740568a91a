"""Experimental protocol: pretraining, single training runs and the training-fraction sweep."""

from __future__ import annotations

import csv
import logging
import time
import uuid
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np

from gearnet.config import GearnetConfig
from gearnet.dataset import LabeledDataset
from gearnet.errors import ConfigurationError, MissingCheckpointError
from gearnet.nn.loss import LossConfig
from gearnet.network.checkpoint import Checkpoint, read_checkpoint, save_checkpoint
from gearnet.network.model import Network, build_network, evaluate_accuracy
from gearnet.network.spec import get_spec
from gearnet.network.transfer import TransferPlan, transplant
from gearnet.observability import record_metrics, trace_run
from gearnet.optim.sgd import OptimizerConfig, SGDMomentum
from gearnet.optim.trainer import HistoryEntry, derive_seed, fit, write_history_csv
from gearnet.signals.pipeline import build_image_dataset
from gearnet.signals.split import DatasetSplit, min_condition_count, split_dataset
from gearnet.supervision.audit_log import AuditLogger
from gearnet.synthgear.generator import generate_dataset, load_corpus
from gearnet.synthgear.source_task import generate_source_task

logger = logging.getLogger(__name__)

Method = Literal["transfer", "local"]
METHODS: tuple[Method, ...] = ("transfer", "local")
_METHOD_CODES = {"transfer": 1, "local": 2}

RESULTS_HEADER = ("method", "fraction", "repeat", "accuracy")


@dataclass
class RunResult:
    method: Method
    fraction: float
    repeat: int
    accuracy: float
    history: list[HistoryEntry] = field(default_factory=list)


def _fraction_key(fraction: float) -> int:
    return int(round(fraction * 1_000_000))


def split_seed(base_seed: int, fraction: float, repeat: int) -> int:
    return derive_seed(base_seed, _fraction_key(fraction), repeat)


def run_seed(base_seed: int, method: Method, fraction: float, repeat: int) -> int:
    return derive_seed(base_seed, _METHOD_CODES[method], _fraction_key(fraction), repeat)


def parse_methods(text: str | Sequence[str]) -> list[Method]:
    names = [m.strip() for m in text.split(",")] if isinstance(text, str) else list(text)
    methods: list[Method] = []
    for name in names:
        if name not in METHODS:
            raise ConfigurationError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
        methods.append(name)  # type: ignore[arg-type]
    return methods


def new_run_id() -> str:
    return uuid.uuid4().hex[:12]


# --- datasets --------------------------------------------------------------------


def prepare_gear_dataset(
    config: GearnetConfig,
    input_shape: tuple[int, int, int],
    data_dir: Path | str | None = None,
    decimate: int | None = None,
) -> LabeledDataset:
    """Encode a saved corpus (or a freshly synthesized one) into network-sized images."""
    if data_dir is not None:
        corpus = load_corpus(data_dir)
    else:
        corpus = generate_dataset(
            config.gearbox,
            signals_per_condition=config.pipeline.signals_per_condition,
            seed=config.pipeline.corpus_seed,
            encoder=config.pipeline.encoder,
        )
    pipeline = config.pipeline
    if decimate is not None:
        pipeline = pipeline.model_copy(update={"decimate": decimate})
    return build_image_dataset(corpus.records, corpus.manifest, pipeline, input_shape)


# --- single runs -----------------------------------------------------------------


def pretrain(
    config: GearnetConfig,
    out: Path | str,
    arch: str | None = None,
    dataset: LabeledDataset | None = None,
    audit: AuditLogger | None = None,
    run_id: str | None = None,
) -> tuple[Network, list[HistoryEntry]]:
    """Train ``arch`` on the source task (or ``dataset``) and write a checkpoint."""
    settings = config.pretrain
    arch = arch or config.experiment.arch_name
    run_id = run_id or new_run_id()
    task = "dataset" if dataset is not None else "source-texture"
    num_classes = int(dataset.labels.max()) + 1 if dataset is not None else settings.num_classes
    spec = get_spec(arch, num_classes)
    if dataset is None:
        dataset = generate_source_task(
            settings.seed, settings.num_classes, settings.samples_per_class, spec.input_shape
        )

    started = time.monotonic()
    network = build_network(spec, derive_seed(settings.seed, 0))
    optimizer = SGDMomentum(OptimizerConfig(settings.learning_rate, settings.momentum))
    loss_config = LossConfig(config.loss.gamma, num_classes)
    with trace_run(run_id, "pretrain", arch=arch) as trace:
        history = fit(
            network,
            dataset,
            settings.epochs,
            settings.batch_size,
            optimizer,
            loss_config,
            derive_seed(settings.seed, 1),
        )
        train_accuracy = evaluate_accuracy(network, dataset)
        record_metrics(run_id, "pretrain", {"train_accuracy": train_accuracy}, trace)

    save_checkpoint(
        network,
        out,
        provenance={
            "task": task,
            "arch": arch,
            "seed": settings.seed,
            "epochs": settings.epochs,
            "samples": len(dataset),
            "train_accuracy": train_accuracy,
        },
    )
    if audit is not None:
        audit.record(
            run_id,
            "pretrain",
            "checkpoint_written",
            {"arch": arch, "path": str(out), "task": task},
            accuracy=train_accuracy,
            loss=history[-1].loss,
            duration_ms=int((time.monotonic() - started) * 1000),
        )
    logger.info("Pretrained %s: train accuracy %.3f -> %s", arch, train_accuracy, out)
    return network, history


def train_local(
    config: GearnetConfig,
    train: LabeledDataset,
    seed: int,
    num_classes: int | None = None,
) -> tuple[Network, list[HistoryEntry]]:
    """Scratch-train the local architecture at the new-layer rate and local momentum."""
    exp = config.experiment
    num_classes = num_classes or int(train.labels.max()) + 1
    network = build_network(get_spec(exp.local_arch_name, num_classes), seed)
    optimizer = SGDMomentum(OptimizerConfig(exp.lr_new, exp.momentum_local))
    history = fit(
        network,
        train,
        exp.epochs,
        exp.batch_size,
        optimizer,
        LossConfig(config.loss.gamma, num_classes),
        seed,
    )
    return network, history


def train_transfer(
    config: GearnetConfig,
    source: Checkpoint,
    train: LabeledDataset,
    seed: int,
    num_classes: int | None = None,
) -> tuple[Network, list[HistoryEntry]]:
    """Transplant the first n source layers, then train everything with per-layer rates."""
    exp = config.experiment
    num_classes = num_classes or int(train.labels.max()) + 1
    target = get_spec(exp.arch_name, num_classes)
    plan = TransferPlan.from_rates(
        exp.n_transfer_layers,
        len(target.layers()),
        exp.lr_transferred,
        exp.lr_new,
        exp.freeze_transferred,
    )
    network = transplant(source, target, plan, seed)
    optimizer = SGDMomentum(
        OptimizerConfig(exp.lr_new, exp.momentum_transfer, dict(network.lr_multipliers))
    )
    history = fit(
        network,
        train,
        exp.epochs,
        exp.batch_size,
        optimizer,
        LossConfig(config.loss.gamma, num_classes),
        seed,
    )
    return network, history


def load_source_checkpoint(path: Path | str) -> Checkpoint:
    path = Path(path)
    if not path.exists():
        raise MissingCheckpointError(
            f"no pretrained checkpoint at {path}; run `gearnet pretrain --out {path}` first"
        )
    return read_checkpoint(path)


# --- sweep -----------------------------------------------------------------------


def run_sweep(
    config: GearnetConfig,
    dataset: LabeledDataset,
    methods: Sequence[Method],
    out_dir: Path | str,
    source: Checkpoint | None = None,
    audit: AuditLogger | None = None,
    run_id: str | None = None,
    save_networks: bool = False,
) -> list[RunResult]:
    """Train and evaluate every (fraction, repeat, method), writing results and histories.

    Both methods in a repeat see the same split. Output is a pure function of
    the config, its base seed and ``dataset``.
    """
    if "transfer" in methods and source is None:
        source = load_source_checkpoint(config.experiment.checkpoint)
    exp = config.experiment
    out_dir = Path(out_dir)
    run_id = run_id or new_run_id()
    num_classes = int(dataset.labels.max()) + 1
    per_condition = min_condition_count(dataset.labels)

    results: list[RunResult] = []
    with trace_run(run_id, "sweep", methods=list(methods), fractions=exp.fractions) as trace:
        for fraction in exp.fractions:
            for repeat in range(exp.repeats):
                split = DatasetSplit.from_fraction(
                    fraction, split_seed(exp.seed, fraction, repeat), per_condition
                )
                train, validation = split_dataset(dataset, split)
                for method in methods:
                    started = time.monotonic()
                    seed = run_seed(exp.seed, method, fraction, repeat)
                    if method == "transfer":
                        assert source is not None
                        network, history = train_transfer(config, source, train, seed, num_classes)
                    else:
                        network, history = train_local(config, train, seed, num_classes)
                    accuracy = evaluate_accuracy(network, validation)
                    tag = f"{method}_f{fraction:g}_r{repeat}"
                    write_history_csv(history, out_dir / "histories" / f"{tag}.csv")
                    if save_networks:
                        save_checkpoint(
                            network,
                            out_dir / "checkpoints" / f"{tag}.gnck",
                            provenance={"method": method, "fraction": fraction, "repeat": repeat},
                        )
                    results.append(RunResult(method, fraction, repeat, accuracy, history))
                    record_metrics(run_id, tag, {"accuracy": accuracy}, trace)
                    if audit is not None:
                        audit.record(
                            run_id,
                            "sweep",
                            "run_completed",
                            {
                                "method": method,
                                "fraction": fraction,
                                "repeat": repeat,
                                "train": len(train),
                                "validation": len(validation),
                            },
                            accuracy=accuracy,
                            loss=history[-1].loss,
                            duration_ms=int((time.monotonic() - started) * 1000),
                        )
                    logger.info(
                        "%s fraction %g repeat %d: validation accuracy %.4f",
                        method,
                        fraction,
                        repeat,
                        accuracy,
                    )

    write_results_csv(results, out_dir / "results.csv")
    return results


def mean_accuracies(results: Sequence[RunResult]) -> dict[tuple[str, float], float]:
    """Arithmetic mean accuracy per (method, fraction), in first-seen order."""
    groups: dict[tuple[str, float], list[float]] = {}
    for r in results:
        groups.setdefault((r.method, r.fraction), []).append(r.accuracy)
    return {key: float(np.mean(values)) for key, values in groups.items()}


def write_results_csv(results: Sequence[RunResult], path: Path | str) -> Path:
    """Per-run rows followed by one ``mean`` row per (method, fraction)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(RESULTS_HEADER)
        for r in results:
            writer.writerow([r.method, f"{r.fraction:g}", r.repeat, repr(r.accuracy)])
        for (method, fraction), mean in mean_accuracies(results).items():
            writer.writerow([method, f"{fraction:g}", "mean", repr(mean)])
    logger.info("Results (%d runs) written to %s", len(results), path)
    return path


def read_results_csv(path: Path | str) -> list[dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Results file not found: {path}")
    with open(path, newline="") as f:
        return list(csv.DictReader(f))
