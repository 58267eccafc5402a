"""Saturation throughput of AP-initiated SU/MU transmissions in 802.11ax WLANs."""

from .config import WlanConfig, derive
from .errors import ConfigError, ConvergenceError, NumericalError
from .experiments import analyze, simulate, sweep, validate

__all__ = ["WlanConfig", "derive", "analyze", "simulate", "sweep", "validate",
           "ConfigError", "ConvergenceError", "NumericalError"]
