"""Kraus channel model.

A channel is stored as its Kraus operators. Construction checks the
completeness relation Σ K†K = I, which makes the map trace preserving.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from models.errors import DimensionError, ValidationError
from models.operators import TOL_HERM, as_complex_matrix


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A completely positive trace-preserving map S -> Σ K S K†.

    Attributes:
        operators: Kraus operators, all d×d.
        label: Short description used in logs and reports.
    """

    operators: Tuple[np.ndarray, ...]
    label: str = "channel"

    def __post_init__(self):
        if len(self.operators) == 0:
            raise ValidationError("A channel needs at least one Kraus operator")
        operators = tuple(as_complex_matrix(k) for k in self.operators)
        dim = operators[0].shape[0]
        if any(k.shape != (dim, dim) for k in operators):
            raise DimensionError("All Kraus operators must share one dimension")
        completeness = sum(k.conj().T @ k for k in operators)
        defect = float(np.max(np.abs(completeness - np.eye(dim))))
        if defect > TOL_HERM:
            raise ValidationError(
                f"Kraus set '{self.label}' is incomplete (defect {defect:.3e})"
            )
        object.__setattr__(self, "operators", operators)

    @classmethod
    def identity(cls, dim: int) -> "KrausChannel":
        """The channel that leaves every state unchanged."""
        return cls((np.eye(dim, dtype=np.complex128),), label="identity")

    @property
    def dim(self) -> int:
        """Dimension the channel acts on."""
        return self.operators[0].shape[0]
