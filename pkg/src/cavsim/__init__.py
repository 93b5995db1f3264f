"""Jaynes-Cummings dynamics, two-cavity entangling schemes and teleportation."""
__version__ = "0.1.0"

from .errors import CavsimError, ConfigError, InvariantViolation, TruncationWarning  # noqa: E402
from .tensor import DensityMatrix, HilbertLayout, partial_trace, partial_transpose  # noqa: E402
from .states import (  # noqa: E402
    AtomState,
    FieldState,
    ThermalParams,
    bell_state,
    coherent_coefficients,
    fock,
    mean_photon_from_temperature,
    thermal_atom,
    thermal_field,
)
from .entanglement import log_negativity, state_fidelity, von_neumann_entropy  # noqa: E402
from .schemes import SchemeConfig, SchemeOutcome, ideal_time_thermal, run_scheme  # noqa: E402
from .teleport import TeleportReport, purification_bound, teleport  # noqa: E402
from .sweeps import SweepResult, reproduce_figure  # noqa: E402

__all__ = [
    "AtomState", "CavsimError", "ConfigError", "DensityMatrix", "FieldState", "HilbertLayout",
    "InvariantViolation", "SchemeConfig", "SchemeOutcome", "SweepResult", "TeleportReport",
    "ThermalParams", "TruncationWarning", "bell_state", "coherent_coefficients", "fock",
    "ideal_time_thermal", "log_negativity", "mean_photon_from_temperature", "partial_trace",
    "partial_transpose", "purification_bound", "reproduce_figure", "run_scheme", "state_fidelity",
    "teleport", "thermal_atom", "thermal_field", "von_neumann_entropy",
]
