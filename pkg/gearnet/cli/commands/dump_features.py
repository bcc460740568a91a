"""gearnet dump-features — write per-stage convolution feature maps for one input."""

from __future__ import annotations

from pathlib import Path

import typer

from gearnet.cli.common import DEFAULT_CONFIG, cli_errors, console, resolve_config
from gearnet.network.checkpoint import load_checkpoint, read_tensor_file
from gearnet.network.model import dump_feature_maps
from gearnet.observability import setup_logging
from gearnet.signals.encode import encode_image
from gearnet.signals.records import read_time_record
from gearnet.signals.resample import angle_resample, decimate

app = typer.Typer()


@app.callback(invoke_without_command=True)
def dump_features(
    ckpt: str = typer.Option(..., "--ckpt", help="Trained checkpoint"),
    input_path: str = typer.Option(
        ..., "--input", help="Signal CSV (encoded on the fly) or .gnt image tensor"
    ),
    out: str = typer.Option(..., "--out", help="Directory for feature-map tensor files"),
    config_path: str = typer.Option(DEFAULT_CONFIG, "--config", help="Path to gearnet.yaml"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
) -> None:
    """Dump the activations after every convolution stage."""
    setup_logging(verbose)
    with cli_errors():
        config = resolve_config(config_path)
        network = load_checkpoint(ckpt)
        source = Path(input_path)
        if source.suffix == ".csv":
            pipeline = config.pipeline
            angle = angle_resample(
                read_time_record(source), pipeline.samples_per_revolution, pipeline.revolutions
            )
            if pipeline.decimate > 1:
                angle = decimate(angle, pipeline.decimate)
            height, width, _ = network.spec.input_shape
            image = encode_image(angle, pipeline.encoder, (height, width), source.name).pixels
        else:
            _, image = read_tensor_file(source)
        written = dump_feature_maps(network, image, out)
        for path in written:
            console.print(f"  {path}")
        console.print(f"[green]{len(written)} feature maps written to {out}[/green]")
