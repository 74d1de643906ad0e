"""Truncated harmonic oscillator with energy-band questions.

A band projector sums the projectors onto neighboring energy eigenstates,
which for a high-energy oscillator selects a band of neighboring orbits in
phase space. Coherent states and their mixtures play the quasi-classical
states. A linear drive λ(a + a†) makes the band leak; without it the band
projector commutes with H and nothing happens.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from models.channels import KrausChannel
from models.errors import DimensionError, PreconditionError, ValidationError
from models.operators import DensityOperator, Hamiltonian, Projector
from models.oscillator_specs import BandSpec, OscillatorSpec
from models.schedules import MeasurementSchedule
from models.trajectories import ZenoTrajectory
from zeno_engine import run_zeno_deterministic

logger = logging.getLogger(__name__)

MAX_TAIL = 1e-6
# Lets |α|² = dim/4 through when α was computed as a square root.
TRUNCATION_SLACK = 1e-12


def ladder_operator(dim: int) -> np.ndarray:
    """Annihilation operator a with a|k⟩ = √k |k-1⟩."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)


def number_operator(dim: int) -> np.ndarray:
    """Number operator a†a."""
    return np.diag(np.arange(dim, dtype=float)).astype(np.complex128)


def build_oscillator(spec: OscillatorSpec) -> Hamiltonian:
    """H = ω(n̂ + 1/2) + λ(a + a†) on the truncated space."""
    ladder = ladder_operator(spec.dim)
    identity = np.eye(spec.dim, dtype=np.complex128)
    matrix = spec.omega * (number_operator(spec.dim) + 0.5 * identity)
    matrix = matrix + spec.drive * (ladder + ladder.conj().T)
    return Hamiltonian(matrix)


def band_projector(band: BandSpec, dim: int) -> Projector:
    """Diagonal 0/1 projector selecting Fock levels n_min .. n_max."""
    band.check_within(dim)
    diagonal = np.zeros(dim)
    diagonal[band.n_min:band.n_max + 1] = 1.0
    return Projector(np.diag(diagonal))


def _check_truncation(alpha: complex, dim: int) -> None:
    if abs(alpha) ** 2 > dim / 4 * (1.0 + TRUNCATION_SLACK):
        raise ValidationError(
            f"|alpha|^2 = {abs(alpha) ** 2:g} exceeds dim/4 = {dim / 4:g}; "
            "increase the truncation dimension"
        )


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    """Fock amplitudes of the coherent state |α⟩, renormalized after truncation.

    Raises:
        ValidationError: If |α|² > dim/4.
    """
    _check_truncation(alpha, dim)
    if alpha == 0:
        ground = np.zeros(dim, dtype=np.complex128)
        ground[0] = 1.0
        return ground
    k = np.arange(dim)
    # Log-space magnitudes avoid overflow in α^k and k!.
    log_magnitude = -0.5 * abs(alpha) ** 2 + k * np.log(abs(alpha)) - 0.5 * gammaln(k + 1)
    amplitudes = np.exp(log_magnitude) * np.exp(1j * k * np.angle(alpha))
    return amplitudes / np.linalg.norm(amplitudes)


def quasiclassical_mixture(components: Sequence[Tuple[complex, float]], dim: int) -> DensityOperator:
    """Σ w_i |α_i⟩⟨α_i| with positive weights; the trace is Σ w_i.

    Raises:
        ValidationError: If components is empty or a weight is not positive.
    """
    if not components:
        raise ValidationError("A mixture needs at least one component")
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for alpha, weight in components:
        if not weight > 0.0:
            raise ValidationError(f"Mixture weights must be positive, got {weight}")
        ket = coherent_state(alpha, dim)
        matrix += weight * np.outer(ket, ket.conj())
    return DensityOperator.from_trusted(matrix)


def truncate_to_band(state: DensityOperator, band: BandSpec) -> Tuple[DensityOperator, float]:
    """Projects a state into a band, keeping its trace.

    Returns:
        The band-supported state and the relative tail weight that was removed.

    Raises:
        PreconditionError: If the state has no weight inside the band.
    """
    projector = band_projector(band, state.dim)
    inside = projector.matrix @ state.matrix @ projector.matrix
    kept = float(np.trace(inside).real)
    if not kept > 0.0:
        raise PreconditionError(f"State has no weight in band [{band.n_min}, {band.n_max}]")
    tail = 1.0 - kept / state.trace
    return DensityOperator.from_trusted(inside * (state.trace / kept)), max(tail, 0.0)


def run_band_zeno(
    spec: OscillatorSpec,
    band: BandSpec,
    state: DensityOperator,
    schedule: MeasurementSchedule,
    channel: Optional[KrausChannel] = None,
    max_tail: float = MAX_TAIL,
) -> ZenoTrajectory:
    """Repeatedly asks whether the oscillator is still in the band.

    Tails up to max_tail of the trace are projected away before the run.

    Raises:
        DimensionError: If the state does not match the oscillator.
        PreconditionError: If the state has more than max_tail outside the band.
    """
    if state.dim != spec.dim:
        raise DimensionError(f"State dimension {state.dim} does not match oscillator {spec.dim}")
    supported, tail = truncate_to_band(state, band)
    if tail > max_tail:
        raise PreconditionError(
            f"State has {tail:.3e} of its trace outside band [{band.n_min}, {band.n_max}]"
        )
    if spec.drive == 0.0:
        logger.debug("Undriven oscillator: the band projector commutes with H")
    hamiltonian = build_oscillator(spec)
    projector = band_projector(band, spec.dim)
    logger.info(
        "Band Zeno run: dim=%d, band=[%d, %d], drive=%g, n=%d",
        spec.dim, band.n_min, band.n_max, spec.drive, schedule.n_steps,
    )
    return run_zeno_deterministic(supported, hamiltonian, projector, schedule, channel)
