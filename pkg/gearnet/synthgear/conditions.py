"""The nine gear conditions and their fault-signature parameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from gearnet.errors import SynthesisError

FaultFamily = Literal["healthy", "missing_tooth", "root_crack", "spalling", "chip"]

CHIP_LEVELS = 5


@dataclass(frozen=True)
class ConditionSpec:
    label: int
    name: str
    impulse_amplitude: float = 0.0
    modulation_depth: float = 0.0
    severity_scale: float = 0.0

    def __post_init__(self) -> None:
        if not 0 <= self.label <= 8:
            raise SynthesisError(f"condition label {self.label} outside 0..8")
        if self.impulse_amplitude < 0 or self.modulation_depth < 0:
            raise SynthesisError(f"{self.name}: amplitudes must be non-negative")
        if not 0.0 <= self.severity_scale <= 1.0:
            raise SynthesisError(f"{self.name}: severity {self.severity_scale} outside [0, 1]")
        if self.family == "healthy" and (self.impulse_amplitude or self.modulation_depth):
            raise SynthesisError("healthy condition cannot carry fault terms")

    @property
    def family(self) -> FaultFamily:
        if self.name.startswith("chip_"):
            return "chip"
        if self.name in ("healthy", "missing_tooth", "root_crack", "spalling"):
            return self.name  # type: ignore[return-value]
        raise SynthesisError(f"unknown condition name {self.name!r}")


def canonical_conditions() -> list[ConditionSpec]:
    """healthy, missing_tooth, root_crack, spalling, then chip_1..chip_5 at severities 0.2..1.0."""
    conditions = [
        ConditionSpec(0, "healthy"),
        ConditionSpec(1, "missing_tooth", impulse_amplitude=2.5, modulation_depth=0.8,
                      severity_scale=1.0),
        ConditionSpec(2, "root_crack", impulse_amplitude=2.0, modulation_depth=0.2,
                      severity_scale=1.0),
        ConditionSpec(3, "spalling", impulse_amplitude=2.0, modulation_depth=0.4,
                      severity_scale=1.0),
    ]
    for level in range(1, CHIP_LEVELS + 1):
        conditions.append(
            ConditionSpec(
                3 + level,
                f"chip_{level}",
                impulse_amplitude=2.5,
                modulation_depth=0.3,
                severity_scale=level / CHIP_LEVELS,
            )
        )
    return conditions
