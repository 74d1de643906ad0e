"""Dense linear algebra primitives for finite-dimensional quantum states.

Provides tensor products, the partial trace onto a processor subsystem, the
exact Hermitian propagator, band projectors and density-matrix diagnostics.
"""

import logging
import math
from typing import List, Optional, Sequence, Union

import numpy as np
import scipy.linalg

from models.errors import DimensionError, ValidationError
from models.operators import (
    TOL_ORTHONORMAL,
    DensityOperator,
    DensityReport,
    Hamiltonian,
    Projector,
    SubsystemPartition,
    as_complex_matrix,
    inspect_density,
)

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, DensityOperator, Projector, Hamiltonian, Sequence]


def matrix_of(operand: MatrixLike) -> np.ndarray:
    """Returns the matrix behind a typed operator or array-like."""
    if isinstance(operand, (DensityOperator, Projector, Hamiltonian)):
        return operand.matrix
    return as_complex_matrix(operand, square=False)


def tensor_product(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """Kronecker product A ⊗ B of two square matrices.

    Raises:
        DimensionError: If either input is not square.
    """
    left = matrix_of(a)
    right = matrix_of(b)
    for name, matrix in (("A", left), ("B", right)):
        if matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"{name} must be square, got shape {matrix.shape}")
    return np.kron(left, right)


def partial_trace_operator(operator: MatrixLike, partition: SubsystemPartition) -> np.ndarray:
    """Traces out every factor but the kept one from any square operator.

    Raises:
        DimensionError: If the partition does not match the operator dimension.
    """
    matrix = matrix_of(operator)
    if matrix.shape != (partition.total_dim, partition.total_dim):
        raise DimensionError(
            f"Partition {partition.factor_dims} does not match shape {matrix.shape}"
        )
    dims = partition.factor_dims
    kept = partition.kept_factor
    count = len(dims)
    tensor = matrix.reshape(dims + dims)
    # Shared labels on the bra and ket side sum out every other factor.
    row_labels = list(range(count))
    col_labels = [count + i if i == kept else i for i in range(count)]
    reduced = np.einsum(tensor, row_labels + col_labels, [kept, count + kept])
    return reduced.reshape(dims[kept], dims[kept])


def partial_trace(state: DensityOperator, partition: SubsystemPartition) -> DensityOperator:
    """Traces out every factor except the kept one.

    Args:
        state: State on the full space.
        partition: Factorization naming the factor to keep.

    Returns:
        The reduced state S_b with Tr(S_b) = Tr(S).

    Raises:
        DimensionError: If the partition does not match the state dimension.
    """
    if partition.total_dim != state.dim:
        raise DimensionError(
            f"Partition {partition.factor_dims} does not match dimension {state.dim}"
        )
    return DensityOperator.from_trusted(partial_trace_operator(state.matrix, partition))


def embed_operator(operator: MatrixLike, partition: SubsystemPartition) -> np.ndarray:
    """Lifts an operator on the kept factor to the full space.

    The result acts as the identity on every other factor.

    Raises:
        DimensionError: If the operator does not match the kept factor.
    """
    local = matrix_of(operator)
    if local.shape != (partition.kept_dim, partition.kept_dim):
        raise DimensionError(
            f"Operator shape {local.shape} does not match kept factor "
            f"dimension {partition.kept_dim}"
        )
    dims = partition.factor_dims
    left = int(np.prod(dims[:partition.kept_factor]))
    right = int(np.prod(dims[partition.kept_factor + 1:]))
    return np.kron(np.kron(np.eye(left), local), np.eye(right))


def hermitian_propagator(hamiltonian: Union[Hamiltonian, MatrixLike], dt: float) -> np.ndarray:
    """Computes U = exp(-iH·dt) exactly from the eigendecomposition of H.

    Raises:
        ValidationError: If H is not Hermitian or dt is not finite.
    """
    if not isinstance(hamiltonian, Hamiltonian):
        hamiltonian = Hamiltonian(hamiltonian)
    if not math.isfinite(dt):
        raise ValidationError(f"Time step must be finite, got {dt}")
    energies, vectors = scipy.linalg.eigh(hamiltonian.matrix)
    phases = np.exp(-1j * energies * dt)
    return (vectors * phases) @ vectors.conj().T


def make_band_projector(vectors: Sequence[Sequence[complex]]) -> Projector:
    """Builds P = Σ|v⟩⟨v| from mutually orthonormal vectors.

    Raises:
        ValidationError: If the vectors are empty or not orthonormal.
    """
    if len(vectors) == 0:
        raise ValidationError("At least one vector is required")
    columns = np.column_stack([np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors])
    gram = columns.conj().T @ columns
    defect = float(np.max(np.abs(gram - np.eye(columns.shape[1]))))
    if defect > TOL_ORTHONORMAL:
        raise ValidationError(f"Vectors are not orthonormal (defect {defect:.3e})")
    return Projector(columns @ columns.conj().T)


def basis_projector(dim: int, levels: Sequence[int]) -> Projector:
    """Projector onto the computational basis states listed in levels."""
    identity = np.eye(dim, dtype=np.complex128)
    for level in levels:
        if not 0 <= level < dim:
            raise DimensionError(f"Basis index {level} out of range for dimension {dim}")
    return make_band_projector([identity[:, level] for level in levels])


def orthonormalize(vectors: Sequence[Sequence[complex]], tol: float = TOL_ORTHONORMAL) -> List[np.ndarray]:
    """Orthonormalizes vectors by QR, dropping linearly dependent ones."""
    columns = np.column_stack([np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors])
    q, r = np.linalg.qr(columns)
    keep = np.abs(np.diag(r)) > tol
    dropped = int(np.count_nonzero(~keep))
    if dropped:
        logger.debug("Dropped %d linearly dependent vectors", dropped)
    return [q[:, i] for i in np.flatnonzero(keep)]


def commutator_norm(a: MatrixLike, b: MatrixLike) -> float:
    """Max entrywise |AB - BA|."""
    left = matrix_of(a)
    right = matrix_of(b)
    return float(np.max(np.abs(left @ right - right @ left)))


def validate_density(matrix: MatrixLike) -> DensityReport:
    """Reports how a square matrix measures up to the density invariants.

    Never raises for a square input; failures are listed in the report.
    """
    report = inspect_density(as_complex_matrix(matrix_of(matrix)))
    if not report.passed:
        logger.debug("Density check failed: %s", "; ".join(report.failures))
    return report


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0,
                     real: bool = False) -> Hamiltonian:
    """Random Hermitian matrix with entries uniform in [-scale, scale]."""
    raw = rng.uniform(-scale, scale, size=(dim, dim))
    if not real:
        raw = raw + 1j * rng.uniform(-scale, scale, size=(dim, dim))
    upper = np.triu(raw, 1)
    diagonal = np.diag(np.real(np.diag(raw)))
    return Hamiltonian(upper + upper.conj().T + diagonal)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    ginibre = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_density(dim: int, rng: np.random.Generator,
                   rank: Optional[int] = None) -> DensityOperator:
    """Random unit-trace density operator of the given rank."""
    columns = rank or dim
    ginibre = rng.normal(size=(dim, columns)) + 1j * rng.normal(size=(dim, columns))
    matrix = ginibre @ ginibre.conj().T
    return DensityOperator(matrix / np.trace(matrix).real)
