"""gearnet: a from-scratch CNN engine with layer-transplant transfer learning for gear faults."""

__version__ = "0.1.0"
