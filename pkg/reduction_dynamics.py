"""The basic dynamical processes acting on a state.

Unitary evolution between jumps, posing a Yes/No question, nature's sampled
answer, and environmental decoherence through Kraus channels. None of these
renormalize the state: probabilities are always ratios of traces.
"""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from models.channels import KrausChannel
from models.errors import DimensionError, NumericalCorruptionError, ValidationError
from models.operators import TOL_PROBABILITY, DensityOperator, Hamiltonian, Projector
from models.outcomes import Answer, ReductionOutcome
from models.rng_stream import RngStream
from operator_core import hermitian_propagator

logger = logging.getLogger(__name__)

BasisLike = Union[np.ndarray, Projector, Sequence]


def _check_dims(state: DensityOperator, dim: int, what: str) -> None:
    if state.dim != dim:
        raise DimensionError(f"State dimension {state.dim} does not match {what} dimension {dim}")


def clamp_probability(value: float) -> float:
    """Clamps round-off outside [0, 1].

    Raises:
        NumericalCorruptionError: If value lies beyond the tolerance.
    """
    if value < -TOL_PROBABILITY or value > 1.0 + TOL_PROBABILITY:
        raise NumericalCorruptionError(f"Probability {value!r} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def propagate(state: DensityOperator, propagator: np.ndarray) -> DensityOperator:
    """Applies a precomputed unitary: U·S·U†."""
    if propagator.shape != (state.dim, state.dim):
        raise DimensionError(
            f"Propagator shape {propagator.shape} does not match state dimension {state.dim}"
        )
    return DensityOperator.from_trusted(propagator @ state.matrix @ propagator.conj().T)


def evolve_unitary(state: DensityOperator, hamiltonian: Hamiltonian, dt: float) -> DensityOperator:
    """Evolves S for a time dt: exp(-iH·dt)·S·exp(+iH·dt)."""
    _check_dims(state, hamiltonian.dim, "Hamiltonian")
    return propagate(state, hermitian_propagator(hamiltonian, dt))


def split_question(state: DensityOperator, projector: Projector) -> Tuple[np.ndarray, np.ndarray]:
    """Returns the unnormalized Yes and No branches P·S·P and (1-P)·S·(1-P).

    Either branch may vanish, so they are returned as plain matrices.
    """
    _check_dims(state, projector.dim, "projector")
    yes = projector.matrix @ state.matrix @ projector.matrix
    complement = projector.complement
    no = complement @ state.matrix @ complement
    return yes, no


def pose_question(state: DensityOperator, projector: Projector) -> DensityOperator:
    """Process I: S -> P·S·P + (1-P)·S·(1-P)."""
    yes, no = split_question(state, projector)
    return DensityOperator.from_trusted(yes + no)


def outcome_probabilities(state: DensityOperator, projector: Projector) -> Tuple[float, float]:
    """Returns (Tr(P·S)/Tr(S), Tr((1-P)·S)/Tr(S)).

    Raises:
        InvalidStateError: If Tr(S) is not positive.
        NumericalCorruptionError: If a ratio lies outside [0, 1] beyond round-off.
    """
    _check_dims(state, projector.dim, "projector")
    trace = state.trace
    in_band = float(np.real(np.vdot(projector.matrix.conj().T, state.matrix)))
    p_yes = clamp_probability(in_band / trace)
    p_no = clamp_probability((trace - in_band) / trace)
    return p_yes, p_no


def reduce(state: DensityOperator, projector: Projector, rng: RngStream) -> ReductionOutcome:
    """Samples nature's answer to the question P.

    Yes is chosen with probability Tr(P·S)/Tr(S). The posterior is the
    matching branch without renormalization.
    """
    p_yes, p_no = outcome_probabilities(state, projector)
    if rng.uniform() < p_yes:
        posterior = projector.matrix @ state.matrix @ projector.matrix
        return ReductionOutcome(Answer.YES, DensityOperator.from_trusted(posterior), p_yes)
    complement = projector.complement
    posterior = complement @ state.matrix @ complement
    return ReductionOutcome(Answer.NO, DensityOperator.from_trusted(posterior), p_no)


def normalize(state: DensityOperator) -> DensityOperator:
    """Returns S/Tr(S)."""
    return DensityOperator.from_trusted(state.matrix / state.trace)


def apply_channel(state: DensityOperator, channel: KrausChannel) -> DensityOperator:
    """Applies Σ K·S·K†."""
    _check_dims(state, channel.dim, "channel")
    result = np.zeros_like(state.matrix)
    for kraus in channel.operators:
        result += kraus @ state.matrix @ kraus.conj().T
    return DensityOperator.from_trusted(result)


def computational_basis(dim: int) -> List[np.ndarray]:
    """Standard basis vectors e_0 .. e_{dim-1}."""
    identity = np.eye(dim, dtype=np.complex128)
    return [identity[:, k] for k in range(dim)]


def fourier_basis(dim: int) -> List[np.ndarray]:
    """Discrete Fourier basis; for a qubit this is the σ_x eigenbasis."""
    k = np.arange(dim)
    modes = np.exp(2j * np.pi * np.outer(k, k) / dim) / np.sqrt(dim)
    return [modes[:, j] for j in range(dim)]


def pointer_projectors(basis: BasisLike) -> List[np.ndarray]:
    """Turns a pointer basis description into a list of projectors.

    Accepts a Projector (split into P and 1 - P), a sequence of Projectors or
    projector matrices, or a sequence of orthonormal vectors.
    """
    if isinstance(basis, Projector):
        if basis.rank == basis.dim:
            return [basis.matrix]
        return [basis.matrix, basis.complement]
    items = list(basis)
    if items and all(isinstance(item, Projector) for item in items):
        return [item.matrix for item in items]
    arrays = [np.asarray(item, dtype=np.complex128) for item in items]
    if arrays and all(a.ndim == 2 for a in arrays):
        return arrays
    return [np.outer(v.reshape(-1), v.reshape(-1).conj()) for v in arrays]


def dephasing_channel(basis: BasisLike, strength: float) -> KrausChannel:
    """Pointer-basis dephasing with Kraus set {√(1-p)·I} ∪ {√p·Π_k}.

    At strength 1 every coherence between different Π_k blocks is removed.

    Raises:
        ValidationError: If strength is outside [0, 1] or the projectors do not
            resolve the identity.
    """
    if not 0.0 <= strength <= 1.0:
        raise ValidationError(f"Dephasing strength must lie in [0, 1], got {strength}")
    projectors = pointer_projectors(basis)
    if not projectors:
        raise ValidationError("Dephasing basis is empty")
    dim = projectors[0].shape[0]
    operators = []
    if strength < 1.0:
        operators.append(np.sqrt(1.0 - strength) * np.eye(dim, dtype=np.complex128))
    if strength > 0.0:
        operators.extend(np.sqrt(strength) * proj for proj in projectors)
    logger.debug("Built dephasing channel: %d projectors, p=%g", len(projectors), strength)
    return KrausChannel(tuple(operators), label=f"dephasing(p={strength:g})")
