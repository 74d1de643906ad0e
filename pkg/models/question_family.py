"""Candidate questions available to a processor."""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from models.errors import DimensionError, ValidationError
from models.operators import Projector


@dataclass(frozen=True)
class QuestionFamily:
    """An ordered, non-empty set of projectors of one dimension.

    Attributes:
        candidates: Candidate questions.
        labels: One label per candidate.
    """

    candidates: Tuple[Projector, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        candidates = tuple(self.candidates)
        if not candidates:
            raise ValidationError("A question family needs at least one candidate")
        if any(not isinstance(c, Projector) for c in candidates):
            raise ValidationError("Every candidate must be a Projector")
        dim = candidates[0].dim
        if any(c.dim != dim for c in candidates):
            raise DimensionError("All candidates must share one dimension")
        labels = tuple(self.labels) or tuple(f"q{i}" for i in range(len(candidates)))
        if len(labels) != len(candidates):
            raise ValidationError("Provide exactly one label per candidate")
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, candidates: Sequence[Projector],
           labels: Optional[Sequence[str]] = None) -> "QuestionFamily":
        """Builds a family from any sequences."""
        return cls(tuple(candidates), tuple(labels or ()))

    @property
    def dim(self) -> int:
        """Dimension the candidates act on."""
        return self.candidates[0].dim

    def __len__(self) -> int:
        return len(self.candidates)
