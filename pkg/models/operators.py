"""Operator models.

This module provides validated value types for the operators the simulator
works with: density operators, projectors (Yes/No questions), Hamiltonians and
subsystem partitions. All matrices are dense complex128 numpy arrays and are
made read-only on construction.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from models.errors import DimensionError, InvalidStateError, ValidationError

TOL_HERM = 1e-10
PSD_FLOOR = -1e-10
TOL_ORTHONORMAL = 1e-8
TOL_IDEMPOTENT = 1e-10
TOL_RANK = 1e-8
TOL_PROBABILITY = 1e-12


def as_complex_matrix(entries, square: bool = True) -> np.ndarray:
    """Converts entries into a finite, read-only complex matrix.

    Args:
        entries: Anything numpy can turn into a 2-D array.
        square: Require equal row and column counts.

    Returns:
        A read-only complex128 array.

    Raises:
        DimensionError: If the input is not 2-D (or not square when required).
        ValidationError: If any entry is NaN or infinite.
    """
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise DimensionError(f"Expected a 2-D matrix, got shape {matrix.shape}")
    if square and matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValidationError("Matrix entries must be finite")
    matrix.setflags(write=False)
    return matrix


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Returns max |M - M†| entrywise."""
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def _hermitize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)


@dataclass(frozen=True)
class DensityReport:
    """Diagnostics of a candidate density matrix.

    Attributes:
        hermiticity_defect: Max entrywise |S - S†|.
        min_eigenvalue: Smallest eigenvalue of the Hermitian part.
        trace: Real part of the trace.
        failures: Human-readable reasons the matrix is not a density operator.
    """

    hermiticity_defect: float
    min_eigenvalue: float
    trace: float
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        """True if the matrix satisfies every DensityOperator invariant."""
        return not self.failures


def inspect_density(matrix: np.ndarray) -> DensityReport:
    """Measures a square matrix against the DensityOperator invariants."""
    defect = hermiticity_defect(matrix)
    min_eig = float(np.min(np.linalg.eigvalsh(_hermitize(matrix))))
    trace = float(np.trace(matrix).real)

    failures: List[str] = []
    if defect > TOL_HERM:
        failures.append(f"not Hermitian (defect {defect:.3e})")
    if min_eig < PSD_FLOOR:
        failures.append(f"not positive semidefinite (min eigenvalue {min_eig:.3e})")
    if trace <= 0.0:
        failures.append(f"trace nonpositive ({trace:.3e})")
    return DensityReport(
        hermiticity_defect=defect,
        min_eigenvalue=min_eig,
        trace=trace,
        failures=tuple(failures),
    )


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A possibly unnormalized state S.

    Reductions never renormalize, so the trace may shrink over a run; it must
    stay strictly positive.

    Attributes:
        matrix: Hermitian positive semidefinite matrix.
        trace_cache: Tr(S), always > 0.
    """

    matrix: np.ndarray
    trace_cache: float = field(init=False)

    def __post_init__(self):
        matrix = as_complex_matrix(self.matrix)
        report = inspect_density(matrix)
        if report.trace <= 0.0:
            raise InvalidStateError(
                f"Density operator trace must be positive, got {report.trace}"
            )
        if not report.passed:
            raise ValidationError(
                "Invalid density operator: " + "; ".join(report.failures)
            )
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "trace_cache", report.trace)

    @classmethod
    def from_trusted(cls, matrix: np.ndarray) -> "DensityOperator":
        """Wraps the output of a positivity-preserving map.

        Skips the eigenvalue check and only symmetrizes away round-off. The
        trace must still be positive.

        Raises:
            InvalidStateError: If the trace is not positive.
        """
        hermitian = _hermitize(np.asarray(matrix, dtype=np.complex128))
        trace = float(np.trace(hermitian).real)
        if not trace > 0.0:
            raise InvalidStateError(
                f"Density operator trace must be positive, got {trace}"
            )
        hermitian.setflags(write=False)
        state = object.__new__(cls)
        object.__setattr__(state, "matrix", hermitian)
        object.__setattr__(state, "trace_cache", trace)
        return state

    @classmethod
    def from_vector(cls, vector: Sequence[complex], weight: float = 1.0) -> "DensityOperator":
        """Builds weight·|v⟩⟨v| from a state vector."""
        ket = np.asarray(vector, dtype=np.complex128).reshape(-1)
        return cls(weight * np.outer(ket, ket.conj()))

    @property
    def dim(self) -> int:
        """Hilbert space dimension."""
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        """Tr(S)."""
        return self.trace_cache

    def scaled(self, factor: float) -> "DensityOperator":
        """Returns factor·S for factor > 0."""
        if factor <= 0.0:
            raise ValidationError(f"Scale factor must be positive, got {factor}")
        return DensityOperator.from_trusted(factor * self.matrix)


@dataclass(frozen=True, eq=False)
class Projector:
    """A Hermitian idempotent P representing a Yes/No question.

    Attributes:
        matrix: The projector matrix.
        rank: Dimension of the Yes subspace, round(Tr P).
    """

    matrix: np.ndarray
    rank: int = field(init=False)

    def __post_init__(self):
        matrix = as_complex_matrix(self.matrix)
        defect = hermiticity_defect(matrix)
        if defect > TOL_HERM:
            raise ValidationError(f"Projector is not Hermitian (defect {defect:.3e})")
        idempotence = float(np.max(np.abs(matrix @ matrix - matrix)))
        if idempotence > TOL_IDEMPOTENT:
            raise ValidationError(
                f"Projector is not idempotent (defect {idempotence:.3e})"
            )
        trace = float(np.trace(matrix).real)
        rank = int(round(trace))
        if abs(trace - rank) > TOL_RANK:
            raise ValidationError(f"Projector trace {trace} is not an integer")
        if rank < 1:
            raise ValidationError("Projector rank must be positive")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rank", rank)

    @property
    def dim(self) -> int:
        """Hilbert space dimension."""
        return self.matrix.shape[0]

    @property
    def complement(self) -> np.ndarray:
        """The matrix 1 - P (the No question, possibly zero)."""
        return np.eye(self.dim, dtype=np.complex128) - self.matrix


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """A Hermitian generator H (ħ = 1, units of inverse time)."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = as_complex_matrix(self.matrix)
        defect = hermiticity_defect(matrix)
        if defect > TOL_HERM:
            raise ValidationError(f"Hamiltonian is not Hermitian (defect {defect:.3e})")
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        """Hilbert space dimension."""
        return self.matrix.shape[0]

    @property
    def spectral_radius(self) -> float:
        """Largest absolute eigenvalue of H."""
        return float(np.max(np.abs(np.linalg.eigvalsh(_hermitize(self.matrix)))))


@dataclass(frozen=True)
class SubsystemPartition:
    """Tensor factorization of the state space.

    Attributes:
        factor_dims: Dimensions of the tensor factors, in order.
        kept_factor: Index of the factor identified with the processor b.
    """

    factor_dims: Tuple[int, ...]
    kept_factor: int

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"Factor dimensions must be positive: {self.factor_dims}")
        if not 0 <= self.kept_factor < len(dims):
            raise DimensionError(
                f"Kept factor {self.kept_factor} out of range for {len(dims)} factors"
            )
        object.__setattr__(self, "factor_dims", dims)

    @property
    def total_dim(self) -> int:
        """Product of the factor dimensions."""
        return int(np.prod(self.factor_dims))

    @property
    def kept_dim(self) -> int:
        """Dimension of the kept factor."""
        return self.factor_dims[self.kept_factor]
