"""Question selection and effort-controlled attention episodes.

The processor owns a fixed family of questions. At each instant of a
prescribed sequence it either consents to pose the question that maximizes
Tr_b(P·S)/Tr_b(S), or lets the state evolve untouched. Effort is the only
other control: it shortens the interval between instants.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import InvalidStateError, ValidationError
from models.operators import DensityOperator, Hamiltonian, Projector, SubsystemPartition
from models.outcomes import Answer
from models.question_family import QuestionFamily
from models.rng_stream import RngStream
from models.schedules import EffortPolicy
from models.trajectories import EpisodeLog, EpisodeRecord, SweepRow
from operator_core import embed_operator, hermitian_propagator, partial_trace
from reduction_dynamics import normalize, outcome_probabilities, propagate, reduce

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.9
TIE_TOLERANCE = 1e-12


def selection_score(state: DensityOperator, projector: Projector,
                    partition: Optional[SubsystemPartition] = None) -> float:
    """Tr_b(P·S)/Tr_b(S), computed on the processor state when a partition is given."""
    reduced = partial_trace(state, partition) if partition is not None else state
    p_yes, _ = outcome_probabilities(reduced, projector)
    return p_yes


def _scores(state: DensityOperator, family: QuestionFamily,
            partition: Optional[SubsystemPartition]) -> List[float]:
    reduced = partial_trace(state, partition) if partition is not None else state
    return [outcome_probabilities(reduced, p)[0] for p in family.candidates]


def _argmax(scores: Sequence[float]) -> int:
    best = max(scores)
    return next(i for i, score in enumerate(scores) if score >= best - TIE_TOLERANCE)


def select_question(state: DensityOperator, family: QuestionFamily,
                    partition: Optional[SubsystemPartition] = None) -> int:
    """Index of the candidate with the highest score; ties go to the lowest index."""
    return _argmax(_scores(state, family, partition))


class _Propagators:
    """Caches exp(-iH·dt) per distinct interval."""

    def __init__(self, hamiltonian: Hamiltonian):
        self.hamiltonian = hamiltonian
        self._cache: Dict[float, np.ndarray] = {}

    def __call__(self, dt: float) -> np.ndarray:
        key = round(dt, 15)
        if key not in self._cache:
            self._cache[key] = hermitian_propagator(self.hamiltonian, dt)
        return self._cache[key]


def _keep_yes_branch(state: DensityOperator, question: Projector,
                     time: float) -> Tuple[DensityOperator, float]:
    """Returns the normalized Yes branch of a unit-trace state and its weight."""
    branch = question.matrix @ state.matrix @ question.matrix
    kept = float(np.real(np.trace(branch))) / state.trace
    if kept <= 0.0:
        logger.error("Yes branch vanished at t=%g", time)
        raise InvalidStateError(f"The Yes branch has zero weight at t={time}")
    return DensityOperator.from_trusted(branch / (kept * state.trace)), kept


# pylint: disable=too-many-arguments,too-many-locals
def run_attention_episode(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    family: QuestionFamily,
    policy: EffortPolicy,
    total_time: float,
    rng: Optional[RngStream] = None,
    threshold: float = DEFAULT_THRESHOLD,
    partition: Optional[SubsystemPartition] = None,
    branch_keeping: bool = False,
) -> EpisodeLog:
    """Runs one episode of consent-gated questioning.

    Between instants the state evolves unitarily. At a consented instant the
    best question is selected and nature answers it; in branch-keeping mode
    the Yes branch is kept without sampling and the hold score is its weight
    relative to Tr(S0). Otherwise the hold score is the selection score and
    the state is renormalized after every answer.

    Args:
        state: Initial state S0.
        hamiltonian: Generator of the evolution between instants.
        family: Candidate questions, on the kept factor if partition is given.
        policy: Consent pattern and effort-controlled spacing.
        total_time: Episode length T.
        rng: Stream for nature's answers; required unless branch_keeping.
        threshold: Hold threshold θ.
        partition: Processor factor for subsystem questions.
        branch_keeping: Follow the Yes branch deterministically.

    Raises:
        ValidationError: If an answer must be sampled and rng is missing, or
            the threshold is outside [0, 1].
        InvalidStateError: If a kept Yes branch has zero weight.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold must lie in [0, 1], got {threshold}")
    if rng is None and not branch_keeping and any(policy.consent):
        raise ValidationError("An rng is required to sample answers")
    if partition is not None:
        questions = [Projector(embed_operator(p, partition)) for p in family.candidates]
    else:
        questions = list(family.candidates)

    propagators = _Propagators(hamiltonian)
    instants = policy.instant_times(total_time)
    initial_trace = state.trace
    # current keeps unit trace; weight is Tr(kept Yes branch)/Tr(S0).
    current = normalize(state)
    weight = 1.0
    previous = 0.0
    hold_duration = 0.0
    records = []
    for index, time in enumerate(instants):
        interval = float(time - previous)
        previous = float(time)
        current = propagate(current, propagators(interval))

        scores = _scores(current, family, partition)
        selected = _argmax(scores)
        score = scores[selected]
        consent = policy.consent_at(index)
        question = selected if consent else None
        answer = None
        if branch_keeping:
            hold_score = min(score * weight, 1.0)
        else:
            hold_score = score
        if consent:
            if branch_keeping:
                current, kept = _keep_yes_branch(current, questions[selected], float(time))
                weight *= kept
                answer = Answer.YES
            else:
                outcome = reduce(current, questions[selected], rng)
                current = normalize(outcome.posterior)
                answer = outcome.answer
        if hold_score >= threshold:
            hold_duration += interval
        records.append(EpisodeRecord(
            time=float(time),
            consent=consent,
            question=question,
            answer=answer,
            score=score,
            hold_score=hold_score,
        ))

    logger.debug(
        "Attention episode: effort=%g, %d instants, hold %.6g",
        policy.effort, len(records), hold_duration,
    )
    final_state = current.matrix * (weight * initial_trace) if branch_keeping else current.matrix
    return EpisodeLog(
        records=tuple(records),
        threshold=threshold,
        hold_duration=hold_duration,
        final_state=final_state,
    )


# pylint: disable=too-many-arguments
def effort_sweep(
    state: DensityOperator,
    hamiltonian: Hamiltonian,
    family: QuestionFamily,
    efforts: Sequence[float],
    total_time: float,
    trials: int,
    rng: Optional[RngStream],
    policy: EffortPolicy,
    threshold: float = DEFAULT_THRESHOLD,
    partition: Optional[SubsystemPartition] = None,
    branch_keeping: bool = False,
) -> List[SweepRow]:
    """Mean hold duration and its standard error for each effort level.

    Effort level j, trial i draws from rng.spawn(j).spawn(i). Branch-keeping
    sweeps are deterministic and run a single episode per level.

    Raises:
        ValidationError: If efforts is empty or trials < 1.
    """
    if len(efforts) == 0:
        raise ValidationError("At least one effort level is required")
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    runs = 1 if branch_keeping else trials
    rows = []
    for level, effort in enumerate(efforts):
        level_policy = policy.with_effort(effort)
        level_rng = rng.spawn(level) if rng is not None else None
        holds = np.array([
            run_attention_episode(
                state, hamiltonian, family, level_policy, total_time,
                rng=level_rng.spawn(trial) if level_rng is not None else None,
                threshold=threshold,
                partition=partition,
                branch_keeping=branch_keeping,
            ).hold_duration
            for trial in range(runs)
        ])
        std_error = float(holds.std(ddof=1) / np.sqrt(runs)) if runs > 1 else 0.0
        rows.append(SweepRow(
            effort=float(effort),
            dt=level_policy.dt,
            mean_hold_duration=float(holds.mean()),
            std_error=std_error,
        ))
        logger.info(
            "Effort %g: mean hold %.6g (se %.2g) over %d episodes",
            effort, rows[-1].mean_hold_duration, std_error, runs,
        )
    return rows
