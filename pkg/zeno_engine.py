"""Repeated questioning and the quantum Zeno effect.

The engine follows the Yes branch of a question posed at uniform intervals,
P·exp(-iHΔt)·S·exp(+iHΔt)·P, and measures three things about it: survival of
the branch, convergence of the in-subspace dynamics to the one generated by
P·H·P, and the order in Δt of the per-step leakage out of the subspace. It
also checks that pointer-basis dephasing leaves these results unchanged.
"""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from models.channels import KrausChannel
from models.errors import (
    DegenerateFitError,
    DimensionError,
    InvalidStateError,
    PreconditionError,
    ValidationError,
)
from models.operators import TOL_HERM, DensityOperator, Hamiltonian, Projector
from models.rng_stream import RngStream
from models.schedules import ChannelPlacement, MeasurementSchedule
from models.trajectories import InvarianceReport, SampledSurvival, ZenoTrajectory
from operator_core import commutator_norm, hermitian_propagator
from reduction_dynamics import (
    BasisLike,
    clamp_probability,
    computational_basis,
    dephasing_channel,
    pointer_projectors,
    reduce,
)

logger = logging.getLogger(__name__)

TOL_SUBSPACE = 1e-10
MAX_LEAKAGE = 0.1
MIN_LEAKAGE = 1e-14


def _check_operands(state: DensityOperator, hamiltonian: Hamiltonian, projector: Projector) -> None:
    if not state.dim == hamiltonian.dim == projector.dim:
        raise DimensionError(
            f"Dimensions differ: state {state.dim}, Hamiltonian {hamiltonian.dim}, "
            f"projector {projector.dim}"
        )


def check_inside(state: DensityOperator, projector: Projector, tol: float = TOL_SUBSPACE) -> None:
    """Requires P·S·P = S.

    Raises:
        PreconditionError: If the state has weight outside the P subspace.
    """
    sandwich = projector.matrix @ state.matrix @ projector.matrix
    defect = float(np.max(np.abs(sandwich - state.matrix)))
    if defect > tol:
        raise PreconditionError(f"Initial state is not inside the P subspace (defect {defect:.3e})")


def _kraus_sum(matrix: np.ndarray, channel: KrausChannel) -> np.ndarray:
    result = np.zeros_like(matrix)
    for kraus in channel.operators:
        result += kraus @ matrix @ kraus.conj().T
    return result


def _in_band(matrix: np.ndarray, projector: Projector) -> float:
    return float(np.real(np.vdot(projector.matrix.conj().T, matrix)))


def _placement(schedule: MeasurementSchedule, channel: Optional[KrausChannel]) -> ChannelPlacement:
    if channel is None:
        return ChannelPlacement.NONE
    if schedule.placement is ChannelPlacement.NONE:
        logger.debug("Channel %s ignored: placement is none", channel.label)
    return schedule.placement


def _walk_yes_branch(
    state: DensityOperator,
    propagator: np.ndarray,
    projector: Projector,
    channel: Optional[KrausChannel],
    placement: ChannelPlacement,
    n_steps: int,
) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yields (evolved, answered) matrices of the Yes branch for each step.

    evolved is U·S·U† before any channel; answered is the branch after the
    question and the channel.
    """
    current = state.matrix
    adjoint = propagator.conj().T
    for _ in range(n_steps):
        evolved = propagator @ current @ adjoint
        answered = evolved
        if placement is ChannelPlacement.BEFORE_QUESTION:
            answered = _kraus_sum(answered, channel)
        answered = projector.matrix @ answered @ projector.matrix
        if placement is ChannelPlacement.AFTER_QUESTION:
            answered = _kraus_sum(answered, channel)
        yield evolved, answered
        current = answered


def run_zeno_deterministic(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    schedule: MeasurementSchedule,
    channel: Optional[KrausChannel] = None,
) -> ZenoTrajectory:
    """Follows the Yes branch of a question repeated at every step.

    Survival is the trace of the repeatedly projected branch relative to
    Tr(S0). The in-band population is tracked separately under non-selective
    questioning, which keeps both branches at every instant.

    Raises:
        DimensionError: If the operands have different dimensions.
        PreconditionError: If S0 is not inside the P subspace.
    """
    _check_operands(state, hamiltonian, projector)
    check_inside(state, projector)
    placement = _placement(schedule, channel)
    propagator = hermitian_propagator(hamiltonian, schedule.dt)
    adjoint = propagator.conj().T
    complement = projector.complement
    initial_trace = state.trace

    survival = [1.0]
    in_band = [_in_band(state.matrix, projector) / initial_trace]
    mixed = state.matrix
    walker = _walk_yes_branch(state, propagator, projector, channel, placement, schedule.n_steps)
    for _, answered in walker:
        survival.append(float(np.trace(answered).real) / initial_trace)

        mixed = propagator @ mixed @ adjoint
        if placement is ChannelPlacement.BEFORE_QUESTION:
            mixed = _kraus_sum(mixed, channel)
        mixed = projector.matrix @ mixed @ projector.matrix + complement @ mixed @ complement
        if placement is ChannelPlacement.AFTER_QUESTION:
            mixed = _kraus_sum(mixed, channel)
        in_band.append(_in_band(mixed, projector) / float(np.trace(mixed).real))

    # Round-off can push an exactly conserved trace a few ulps above 1.
    survival_curve = np.minimum.accumulate(np.clip(survival, 0.0, 1.0))
    logger.debug(
        "Deterministic Zeno run: n=%d, dt=%g, final survival %.12g",
        schedule.n_steps, schedule.dt, survival_curve[-1],
    )
    return ZenoTrajectory(
        times=schedule.times,
        survival=survival_curve,
        in_band_population=np.clip(in_band, 0.0, 1.0),
    )


def _channel_step(matrix: np.ndarray, channel: Optional[KrausChannel]) -> np.ndarray:
    return matrix if channel is None else _kraus_sum(matrix, channel)


def run_zeno_sampled(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    schedule: MeasurementSchedule,
    rng: RngStream,
    trials: int,
    channel: Optional[KrausChannel] = None,
) -> SampledSurvival:
    """Samples nature's answers over independent trials.

    Trial i draws from the child stream rng.spawn(i), so trials may run in any
    order or in parallel. A trial stops at its first No.

    Raises:
        ValidationError: If trials < 1.
    """
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    _check_operands(state, hamiltonian, projector)
    check_inside(state, projector)
    placement = _placement(schedule, channel)
    propagator = hermitian_propagator(hamiltonian, schedule.dt)
    adjoint = propagator.conj().T
    before = channel if placement is ChannelPlacement.BEFORE_QUESTION else None
    after = channel if placement is ChannelPlacement.AFTER_QUESTION else None

    survived = np.zeros(schedule.n_steps + 1, dtype=np.int64)
    for trial in range(trials):
        stream = rng.spawn(trial)
        current = state
        steps_survived = 0
        for _ in range(schedule.n_steps):
            evolved = _channel_step(propagator @ current.matrix @ adjoint, before)
            outcome = reduce(DensityOperator.from_trusted(evolved), projector, stream)
            if not outcome.is_yes:
                break
            steps_survived += 1
            current = outcome.posterior
            if after is not None:
                current = DensityOperator.from_trusted(_kraus_sum(current.matrix, after))
        survived[:steps_survived + 1] += 1

    frequency = survived / trials
    std_error = np.sqrt(frequency * (1.0 - frequency) / trials)
    logger.info(
        "Sampled Zeno run: %d trials, n=%d, final survival %.6f",
        trials, schedule.n_steps, frequency[-1],
    )
    return SampledSurvival(
        times=schedule.times,
        survival=frequency,
        std_error=std_error,
        trials=trials,
        seed=rng.seed,
    )


def effective_hamiltonian(hamiltonian: Hamiltonian, projector: Projector) -> Hamiltonian:
    """Returns P·H·P, the generator that survives frequent questioning."""
    if hamiltonian.dim != projector.dim:
        raise DimensionError(
            f"Hamiltonian dimension {hamiltonian.dim} does not match projector "
            f"dimension {projector.dim}"
        )
    return Hamiltonian(projector.matrix @ hamiltonian.matrix @ projector.matrix)


def zeno_php_deviation(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    total_time: float,
    n_steps: int,
) -> float:
    """Distance between the questioned branch and evolution under P·H·P.

    Both states are normalized before taking the max-entrywise difference.

    Raises:
        PreconditionError: If S0 is not inside the P subspace.
        InvalidStateError: If the Yes branch has vanished.
    """
    _check_operands(state, hamiltonian, projector)
    check_inside(state, projector)
    schedule = MeasurementSchedule(total_time=total_time, n_steps=n_steps)
    propagator = hermitian_propagator(hamiltonian, schedule.dt)
    branch = state.matrix
    for _, branch in _walk_yes_branch(
        state, propagator, projector, None, ChannelPlacement.NONE, n_steps
    ):
        pass
    branch_trace = float(np.trace(branch).real)
    if not branch_trace > 0.0:
        raise InvalidStateError("The Yes branch vanished before the final instant")

    effective = hermitian_propagator(effective_hamiltonian(hamiltonian, projector), total_time)
    reference = effective @ state.matrix @ effective.conj().T
    deviation = np.abs(branch / branch_trace - reference / state.trace)
    return float(np.max(deviation))


def per_step_leakage(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    dt: float,
) -> float:
    """Weight moved out of the P subspace by one step of length dt.

    Computed as Tr((1-P)·U·S·U†)/Tr(S) so small values keep full precision.
    """
    _check_operands(state, hamiltonian, projector)
    propagator = hermitian_propagator(hamiltonian, dt)
    evolved = propagator @ state.matrix @ propagator.conj().T
    leaked = float(np.real(np.vdot(projector.complement.conj().T, evolved)))
    return max(leaked / state.trace, 0.0)


def default_dt_list(hamiltonian: Hamiltonian, count: int = 5) -> List[float]:
    """Geometric ladder 0.1/‖H‖, 0.05/‖H‖, ... with count entries.

    Raises:
        DegenerateFitError: If H has zero spectral radius.
    """
    radius = hamiltonian.spectral_radius
    if radius <= 0.0:
        raise DegenerateFitError("Hamiltonian has zero spectral radius; nothing leaks")
    return [0.1 / radius / 2**k for k in range(count)]


def leakage_scaling_exponent(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    dt_list: Optional[Sequence[float]] = None,
) -> float:
    """Least-squares slope of log(per-step leakage) against log(dt).

    Raises:
        PreconditionError: If S0 is outside P or a step leaks 0.1 or more.
        ValidationError: If fewer than 4 steps or less than a decade is given.
        DegenerateFitError: If the leakage vanishes (question commutes with H).
    """
    _check_operands(state, hamiltonian, projector)
    check_inside(state, projector)
    steps = list(dt_list) if dt_list is not None else default_dt_list(hamiltonian)
    if len(steps) < 4:
        raise ValidationError(f"At least 4 step sizes are required, got {len(steps)}")
    if min(steps) <= 0.0:
        raise ValidationError("Step sizes must be positive")
    if max(steps) / min(steps) < 10.0 * (1.0 - 1e-9):
        raise ValidationError("Step sizes must span at least one decade")

    leakages = np.array([per_step_leakage(state, hamiltonian, projector, dt) for dt in steps])
    if np.any(leakages < MIN_LEAKAGE):
        raise DegenerateFitError(
            f"Leakage {leakages.min():.3e} is below {MIN_LEAKAGE:g}; the question "
            "does not leak under this Hamiltonian"
        )
    if np.any(leakages >= MAX_LEAKAGE):
        raise PreconditionError(
            f"Per-step leakage {leakages.max():.3g} is too large for a scaling fit"
        )
    slope, _ = np.polyfit(np.log(steps), np.log(leakages), 1)
    logger.info("Leakage scaling exponent %.4f over %d step sizes", slope, len(steps))
    return float(slope)


def _question_deviation(
    state: DensityOperator,
    propagator: np.ndarray,
    projector: Projector,
    channel: KrausChannel,
    placement: ChannelPlacement,
    n_steps: int,
) -> float:
    worst = 0.0
    for evolved, _ in _walk_yes_branch(state, propagator, projector, channel, placement, n_steps):
        trace = float(np.trace(evolved).real)
        if not trace > 0.0:
            break
        plain = clamp_probability(_in_band(evolved, projector) / trace)
        dephased = clamp_probability(_in_band(_kraus_sum(evolved, channel), projector) / trace)
        worst = max(worst, abs(dephased - plain))
    return worst


def decoherence_invariance_report(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    projector: Projector,
    schedule: MeasurementSchedule,
    strengths: Sequence[float],
    basis: Optional[BasisLike] = None,
) -> InvarianceReport:
    """Compares survival curves under pointer-basis dephasing of several strengths.

    A pointer basis that does not commute with P is a physically meaningful
    regime; it is logged as a warning and reported, not raised.

    Args:
        basis: Pointer basis; defaults to the computational basis.
    """
    if not strengths:
        raise ValidationError("At least one dephasing strength is required")
    if basis is None:
        basis = computational_basis(projector.dim)
    projectors = pointer_projectors(basis)
    defect = max(commutator_norm(pointer, projector.matrix) for pointer in projectors)
    commutes = defect <= TOL_HERM

    propagator = hermitian_propagator(hamiltonian, schedule.dt)
    curves = {}
    question_deviation = 0.0
    for strength in strengths:
        channel = dephasing_channel(basis, strength)
        trajectory = run_zeno_deterministic(state, hamiltonian, projector, schedule, channel)
        curves[float(strength)] = trajectory.survival
        question_deviation = max(
            question_deviation,
            _question_deviation(
                state, propagator, projector, channel, schedule.placement, schedule.n_steps
            ),
        )

    stacked = np.vstack(list(curves.values()))
    max_deviation = float(np.max(stacked.max(axis=0) - stacked.min(axis=0)))
    warning = None
    if not commutes:
        warning = (
            f"Pointer basis does not commute with P (defect {defect:.3e}); "
            f"survival deviation {max_deviation:.3e}"
        )
        logger.warning("%s", warning)
    logger.info("Decoherence invariance: max survival deviation %.3e", max_deviation)
    return InvarianceReport(
        strengths=tuple(float(s) for s in strengths),
        curves=curves,
        times=schedule.times,
        max_deviation=max_deviation,
        max_question_deviation=question_deviation,
        commutes=commutes,
        warning=warning,
    )
