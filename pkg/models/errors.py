"""Exceptions raised by the simulator.

Every error derives from ValueError so that callers catching ValueError, as
the runner and CLI do, see all of them.
"""

from typing import Iterable, List


class SimulationError(ValueError):
    """Base class for all simulator errors."""


class DimensionError(SimulationError):
    """Raised when operator shapes are inconsistent."""


class ValidationError(SimulationError):
    """Raised when an operator violates the invariants of its type."""


class NumericalInvariantError(SimulationError):
    """Base class for violations of numerical invariants during a run."""


class InvalidStateError(NumericalInvariantError):
    """Raised when a state has nonpositive trace."""


class NumericalCorruptionError(NumericalInvariantError):
    """Raised when a probability falls outside [0, 1] beyond round-off."""


class DegenerateFitError(NumericalInvariantError):
    """Raised when a scaling fit has nothing to fit."""


class PreconditionError(NumericalInvariantError):
    """Raised when a state lies outside the subspace an operation requires."""


class ConfigError(SimulationError):
    """Raised when an experiment config is invalid.

    Attributes:
        errors: Every problem found, in discovery order.
    """

    def __init__(self, errors: Iterable[str]):
        self.errors: List[str] = list(errors)
        super().__init__("; ".join(self.errors) or "Invalid config")
