"""Pydantic v2 configuration models for gearnet.yaml."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field, field_validator

DEFAULT_FRACTIONS = [0.8, 0.6, 0.4, 0.2, 0.1, 0.05, 0.02]


class ExperimentConfig(BaseModel):
    """Training-fraction sweep settings; defaults are the reference protocol settings."""

    arch_name: str = "mini"
    local_arch_name: str = "mini-local"
    fractions: list[float] = Field(default_factory=lambda: list(DEFAULT_FRACTIONS))
    repeats: int = Field(5, ge=1)
    epochs: int = Field(15, ge=1)
    batch_size: int = Field(5, ge=1)
    lr_transferred: float = Field(1e-4, ge=0)
    lr_new: float = Field(1e-2, gt=0)
    momentum_transfer: float = Field(0.9, ge=0, lt=1)
    momentum_local: float = Field(0.5, ge=0, lt=1)
    n_transfer_layers: int = Field(21, ge=1)
    freeze_transferred: bool = False
    seed: int = Field(0, ge=0)
    checkpoint: str = "runs/pretrained.gnck"

    @field_validator("fractions")
    @classmethod
    def _fractions_in_range(cls, v: list[float]) -> list[float]:
        for f in v:
            if not 0.0 < f <= 1.0:
                raise ValueError(f"training fraction {f} must lie in (0, 1]")
        return v


class PretrainConfig(BaseModel):
    num_classes: int = Field(6, ge=2)
    samples_per_class: int = Field(200, ge=1)
    epochs: int = Field(15, ge=1)
    batch_size: int = Field(5, ge=1)
    learning_rate: float = Field(1e-3, gt=0)
    momentum: float = Field(0.9, ge=0, lt=1)
    seed: int = Field(1, ge=0)


class GearboxConfig(BaseModel):
    """Synthetic two-stage gearbox; tooth counts follow the test rig geometry."""

    pinion_teeth: int = 32
    gear_teeth: int = 80
    second_stage: tuple[int, int] = (48, 64)
    second_stage_amplitude: float = Field(0.0, ge=0)
    nominal_speed_hz: float = Field(20.0, gt=0)
    speed_fluctuation_pct: float = Field(2.0, ge=0)
    noise_std: float = Field(0.25, ge=0)
    harmonics: int = Field(3, ge=1)
    sample_rate_hz: float = Field(20_000.0, gt=0)
    record_revolutions: float = Field(4.25, gt=0)
    fault_angle_rad: float = 1.0
    burst_carrier_order: float = 120.0


class PipelineConfig(BaseModel):
    samples_per_revolution: int = Field(900, ge=1)
    revolutions: int = Field(4, ge=1)
    encoder: Literal["reshape", "plot_raster"] = "reshape"
    decimate: int = Field(1, ge=1)
    signals_per_condition: int = Field(104, ge=1)
    corpus_seed: int = Field(7, ge=0)


class LossSettings(BaseModel):
    gamma: float = Field(5e-4, ge=0)


class OutputsConfig(BaseModel):
    runs_dir: str = "runs"
    audit_log: str = "runs/audit.jsonl"


class GearnetConfig(BaseModel):
    """Top-level configuration validated from gearnet.yaml."""

    experiment: ExperimentConfig = Field(default_factory=ExperimentConfig)
    pretrain: PretrainConfig = Field(default_factory=PretrainConfig)
    gearbox: GearboxConfig = Field(default_factory=GearboxConfig)
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    loss: LossSettings = Field(default_factory=LossSettings)
    outputs: OutputsConfig = Field(default_factory=OutputsConfig)


_SECTIONS = set(GearnetConfig.model_fields)


def load_config(path: Path | str = "gearnet.yaml") -> GearnetConfig:
    """Read a YAML or JSON config file and return a validated GearnetConfig.

    A file holding bare ExperimentConfig fields is treated as the
    ``experiment`` section.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    with open(path) as f:
        raw: dict[str, Any] = yaml.safe_load(f) or {}

    if raw and not (set(raw) & _SECTIONS):
        raw = {"experiment": raw}

    return GearnetConfig.model_validate(raw)
