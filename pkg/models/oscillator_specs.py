"""Truncated harmonic oscillator specifications."""

import math
from dataclasses import dataclass
from typing import Optional

from models.errors import DimensionError, ValidationError

MIN_DIM = 4
DEFAULT_DRIVE_RATIO = 0.2


@dataclass(frozen=True)
class OscillatorSpec:
    """A driven oscillator on Fock levels 0 .. dim-1.

    Attributes:
        dim: Truncation dimension.
        omega: Angular frequency (ħ = 1).
        drive: Linear drive λ; defaults to 0.2/ω when omitted.
    """

    dim: int
    omega: float = 1.0
    drive: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < MIN_DIM:
            raise ValidationError(f"Oscillator dimension must be an integer >= {MIN_DIM}")
        if not math.isfinite(self.omega) or self.omega <= 0.0:
            raise ValidationError(f"omega must be positive, got {self.omega}")
        drive = DEFAULT_DRIVE_RATIO / self.omega if self.drive is None else float(self.drive)
        if not math.isfinite(drive):
            raise ValidationError(f"drive must be finite, got {self.drive}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "drive", drive)


@dataclass(frozen=True)
class BandSpec:
    """Fock levels n_min .. n_max inclusive."""

    n_min: int
    n_max: int

    def __post_init__(self):
        if self.n_min < 0 or self.n_max < self.n_min:
            raise ValidationError(f"Invalid band [{self.n_min}, {self.n_max}]")

    @property
    def size(self) -> int:
        """Number of levels in the band."""
        return self.n_max - self.n_min + 1

    def check_within(self, dim: int) -> None:
        """Raises DimensionError if the band does not fit in dim levels."""
        if self.n_max >= dim:
            raise DimensionError(
                f"Band [{self.n_min}, {self.n_max}] exceeds truncation dimension {dim}"
            )
