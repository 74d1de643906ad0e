"""Result models for Zeno runs and attention episodes."""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from models.errors import ValidationError
from models.outcomes import Answer


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ZenoTrajectory:
    """Deterministic diagnostics of repeated questioning.

    Attributes:
        times: Instants 0, dt, ..., T.
        survival: Probability that every answer so far was Yes.
        in_band_population: Tr(P·S)/Tr(S) under non-selective questioning.
    """

    times: np.ndarray
    survival: np.ndarray
    in_band_population: np.ndarray

    def __post_init__(self):
        times = _frozen(self.times)
        survival = _frozen(self.survival)
        in_band = _frozen(self.in_band_population)
        if not times.shape == survival.shape == in_band.shape:
            raise ValidationError("Trajectory columns must have equal length")
        if np.any(survival < 0.0) or np.any(survival > 1.0):
            raise ValidationError("Survival must lie in [0, 1]")
        if np.any(np.diff(survival) > 0.0):
            raise ValidationError("Survival must be non-increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "survival", survival)
        object.__setattr__(self, "in_band_population", in_band)

    @property
    def final_survival(self) -> float:
        """Survival at the last instant."""
        return float(self.survival[-1])


@dataclass(frozen=True, eq=False)
class SampledSurvival:
    """Empirical all-Yes frequency over seeded trials.

    Attributes:
        times: Instants 0, dt, ..., T.
        survival: Fraction of trials answered Yes at every instant so far.
        std_error: Binomial standard error sqrt(f(1-f)/trials).
        trials: Number of trials.
        seed: Root seed of the trial streams.
    """

    times: np.ndarray
    survival: np.ndarray
    std_error: np.ndarray
    trials: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "times", _frozen(self.times))
        object.__setattr__(self, "survival", _frozen(self.survival))
        object.__setattr__(self, "std_error", _frozen(self.std_error))


@dataclass(frozen=True, eq=False)
class InvarianceReport:
    """Survival under several dephasing strengths.

    Attributes:
        strengths: Dephasing strengths p, in input order.
        curves: Survival curve per strength.
        times: Shared instants.
        max_deviation: Largest pairwise survival difference over all instants.
        max_question_deviation: Largest change of Tr(P·S)/Tr(S) caused by
            applying the channel right before a question, along each run.
        commutes: True if every pointer projector commutes with P.
        warning: Explanation when commutes is False.
    """

    strengths: Tuple[float, ...]
    curves: Dict[float, np.ndarray]
    times: np.ndarray
    max_deviation: float
    max_question_deviation: float
    commutes: bool
    warning: Optional[str] = None


@dataclass(frozen=True)
class EpisodeRecord:
    """One instant of an attention episode.

    Attributes:
        time: Instant.
        consent: Whether a question was posed.
        question: Index of the selected question, or None without consent.
        answer: Realized answer, or None without consent.
        score: Selection score Tr(P·S)/Tr(S) just before the instant.
        hold_score: Score the hold duration is measured on.
    """

    time: float
    consent: bool
    question: Optional[int]
    answer: Optional[Answer]
    score: float
    hold_score: float


@dataclass(frozen=True, eq=False)
class EpisodeLog:
    """Per-instant records of an attention episode.

    Attributes:
        records: Records in time order.
        threshold: Hold threshold θ.
        hold_duration: Total length of the intervals whose closing hold score
            is at least θ.
        final_state: State matrix at the end of the episode: the kept Yes
            branch, of trace Tr(S0) times its weight, in branch-keeping mode,
            and the normalized conditional state otherwise.
    """

    records: Tuple[EpisodeRecord, ...]
    threshold: float
    hold_duration: float
    final_state: np.ndarray = field(repr=False)

    def __post_init__(self):
        times = [r.time for r in self.records]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("Episode times must be strictly increasing")
        if any(not 0.0 <= r.score <= 1.0 or not 0.0 <= r.hold_score <= 1.0 for r in self.records):
            raise ValidationError("Episode scores must lie in [0, 1]")


@dataclass(frozen=True)
class SweepRow:
    """Mean hold duration at one effort level."""

    effort: float
    dt: float
    mean_hold_duration: float
    std_error: float
