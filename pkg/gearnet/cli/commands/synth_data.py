"""gearnet synth-data — generate and save a synthetic gearbox corpus."""

from __future__ import annotations

import numpy as np
import typer

from gearnet.cli.common import DEFAULT_CONFIG, cli_errors, console, resolve_config
from gearnet.observability import setup_logging
from gearnet.signals.split import min_condition_count, stratified_indices, train_count
from gearnet.synthgear.generator import (
    generate_dataset,
    nearest_centroid_accuracy,
    order_spectrum_features,
    save_corpus,
)

app = typer.Typer()


@app.callback(invoke_without_command=True)
def synth_data(
    out: str = typer.Option(..., "--out", help="Directory for signal CSVs and manifest.json"),
    seed: int | None = typer.Option(
        None, "--seed", help="Corpus seed (default: pipeline.corpus_seed)"
    ),
    per_condition: int | None = typer.Option(
        None, "--per-condition", help="Signals per condition (default: 104)"
    ),
    check: bool = typer.Option(
        False, "--check", help="Report nearest-centroid accuracy on order spectra"
    ),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Synthesize the nine-condition gearbox corpus."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        corpus = generate_dataset(
            config.gearbox,
            signals_per_condition=per_condition or config.pipeline.signals_per_condition,
            seed=config.pipeline.corpus_seed if seed is None else seed,
            encoder=config.pipeline.encoder,
        )
        manifest = save_corpus(corpus, out)
        console.print(f"[green]Wrote {len(corpus)} records and {manifest}[/green]")

        if check:
            features = order_spectrum_features(
                corpus, config.pipeline.samples_per_revolution, config.pipeline.revolutions
            )
            labels = np.array([row["condition"] for row in corpus.manifest])
            count = train_count(0.5, min_condition_count(labels))
            train, held_out = stratified_indices(labels, count, seed=0)
            if held_out.size == 0:
                console.print("[yellow]Too few signals per condition for a held-out half.[/yellow]")
                return
            accuracy = nearest_centroid_accuracy(
                features[train], labels[train], features[held_out], labels[held_out]
            )
            console.print(f"Nearest-centroid accuracy on order spectra: {accuracy:.3f}")
