"""Exception hierarchy shared across gearnet."""

from __future__ import annotations


class GearnetError(Exception):
    """Base class for every error raised by gearnet."""


class ConfigurationError(GearnetError, ValueError):
    """A layer, network or pipeline setting is inconsistent with its input."""


class CheckpointError(GearnetError):
    """Base class for checkpoint decoding failures."""


class NotACheckpointError(CheckpointError):
    """The file does not start with the checkpoint magic."""


class CheckpointVersionError(CheckpointError):
    """The checkpoint was written by an unsupported format version."""


class TruncatedCheckpointError(CheckpointError):
    """The payload ended before all declared bytes were read."""


class CheckpointIntegrityError(CheckpointError):
    """The embedded spec and the stored tensors disagree."""


class TransplantError(GearnetError):
    """Source and target layers cannot be transplanted."""


class SignalError(GearnetError):
    """A vibration record cannot be processed."""


class InsufficientPulsesError(SignalError):
    """Too few tachometer pulses for the requested revolutions."""


class SplitError(GearnetError):
    """A condition holds fewer samples than the split requires."""


class SynthesisError(GearnetError):
    """Synthetic data cannot be generated with the given settings."""


class MissingCheckpointError(GearnetError):
    """A transfer run was requested without a pretrained checkpoint."""
