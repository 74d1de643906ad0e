"""Reduction outcome model."""

from dataclasses import dataclass
from enum import Enum

from models.operators import DensityOperator


class Answer(Enum):
    """Nature's answer to a Yes/No question."""
    YES = "yes"
    NO = "no"


@dataclass(frozen=True)
class ReductionOutcome:
    """Result of one sampled reduction.

    Attributes:
        answer: The realized answer.
        posterior: P·S·P for Yes, (1-P)·S·(1-P) for No; not renormalized.
        probability: Probability of the realized answer.
    """

    answer: Answer
    posterior: DensityOperator
    probability: float

    @property
    def is_yes(self) -> bool:
        """True if nature answered Yes."""
        return self.answer is Answer.YES
