"""Measurement schedules.

MeasurementSchedule fixes the uniform instants at which the Zeno engine poses
its question; EffortPolicy carries the two mind-side controls of an attention
episode, consent and effort.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from models.errors import ValidationError


class ChannelPlacement(Enum):
    """Where a decoherence channel acts within each step."""
    BEFORE_QUESTION = "before-question"
    AFTER_QUESTION = "after-question"
    NONE = "none"


@dataclass(frozen=True)
class MeasurementSchedule:
    """Uniformly spaced questions over [0, T].

    Attributes:
        total_time: T.
        n_steps: Number of questions posed.
        channel_strength: Dephasing strength p used when a channel is built
            from this schedule.
        placement: Where the channel acts relative to each question.
    """

    total_time: float
    n_steps: int
    channel_strength: float = 0.0
    placement: ChannelPlacement = ChannelPlacement.AFTER_QUESTION

    def __post_init__(self):
        if not math.isfinite(self.total_time) or self.total_time <= 0.0:
            raise ValidationError(f"total_time must be positive, got {self.total_time}")
        if isinstance(self.n_steps, bool) or int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValidationError(f"n_steps must be a positive integer, got {self.n_steps}")
        if not 0.0 <= self.channel_strength <= 1.0:
            raise ValidationError(
                f"channel_strength must lie in [0, 1], got {self.channel_strength}"
            )
        object.__setattr__(self, "n_steps", int(self.n_steps))
        object.__setattr__(self, "placement", ChannelPlacement(self.placement))

    @classmethod
    def from_dt(cls, total_time: float, dt: float, **kwargs) -> "MeasurementSchedule":
        """Builds a schedule from a step size that divides total_time.

        Raises:
            ValidationError: If dt does not divide total_time.
        """
        if dt <= 0.0:
            raise ValidationError(f"dt must be positive, got {dt}")
        n_steps = int(round(total_time / dt))
        if n_steps < 1 or abs(n_steps * dt - total_time) > 1e-9 * max(1.0, total_time):
            raise ValidationError(f"dt={dt} does not divide total_time={total_time}")
        return cls(total_time=total_time, n_steps=n_steps, **kwargs)

    @property
    def dt(self) -> float:
        """Interval between questions, T/n."""
        return self.total_time / self.n_steps

    @property
    def times(self) -> np.ndarray:
        """The n + 1 instants 0, dt, ..., T."""
        return np.linspace(0.0, self.total_time, self.n_steps + 1)

    def with_steps(self, n_steps: int) -> "MeasurementSchedule":
        """Same schedule with a different number of questions."""
        return replace(self, n_steps=n_steps)


@dataclass(frozen=True)
class EffortPolicy:
    """Consent and effort controls for an attention episode.

    Effort shortens the interval between instants as dt(e) = dt0/(1 + e).

    Attributes:
        base_interval: dt0 > 0.
        effort: e >= 0.
        consent: Per-instant consent pattern, repeated cyclically.
        instants: Explicit instant times; overrides the uniform spacing.
    """

    base_interval: float
    effort: float = 0.0
    consent: Tuple[bool, ...] = (True,)
    instants: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if not math.isfinite(self.base_interval) or self.base_interval <= 0.0:
            raise ValidationError(f"base_interval must be positive, got {self.base_interval}")
        if not math.isfinite(self.effort) or self.effort < 0.0:
            raise ValidationError(f"effort must be nonnegative, got {self.effort}")
        if len(self.consent) == 0:
            raise ValidationError("consent pattern must not be empty")
        object.__setattr__(self, "consent", tuple(bool(c) for c in self.consent))
        if self.instants is not None:
            instants = tuple(float(t) for t in self.instants)
            if not instants or instants[0] <= 0.0 or any(
                b <= a for a, b in zip(instants, instants[1:])
            ):
                raise ValidationError("instants must be positive and strictly increasing")
            object.__setattr__(self, "instants", instants)

    @property
    def dt(self) -> float:
        """Interval between instants at this effort."""
        return self.base_interval / (1.0 + self.effort)

    def with_effort(self, effort: float) -> "EffortPolicy":
        """Same policy at a different effort."""
        return replace(self, effort=effort)

    def instant_times(self, total_time: float) -> np.ndarray:
        """Instants in (0, T]; the last uniform interval is shortened to end at T."""
        if total_time <= 0.0:
            raise ValidationError(f"total_time must be positive, got {total_time}")
        if self.instants is not None:
            times = np.array([t for t in self.instants if t <= total_time])
            if times.size == 0:
                raise ValidationError("No instants fall inside the episode")
            return times
        count = int(math.ceil(total_time / self.dt - 1e-9))
        times = np.arange(1, count + 1) * self.dt
        times[-1] = total_time
        return times

    def consent_at(self, index: int) -> bool:
        """Consent for the instant with the given index."""
        return self.consent[index % len(self.consent)]
