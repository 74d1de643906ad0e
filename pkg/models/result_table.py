"""Tabular experiment results."""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Sequence, Tuple

from models.errors import ValidationError


@dataclass(frozen=True)
class ResultTable:
    """Rows of reals under named columns.

    Attributes:
        columns: Column names, in CSV order.
        rows: Rows of finite floats, one value per column.
        scalars: Key results reported in the summary.
        metadata: Config digest, versions, seed and timing.
    """

    columns: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...] = ()
    scalars: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        columns = tuple(self.columns)
        if not columns:
            raise ValidationError("A result table needs at least one column")
        if len(set(columns)) != len(columns):
            raise ValidationError(f"Duplicate column names: {columns}")
        rows = tuple(tuple(float(value) for value in row) for row in self.rows)
        for index, row in enumerate(rows):
            if len(row) != len(columns):
                raise ValidationError(
                    f"Row {index} has {len(row)} values for {len(columns)} columns"
                )
            if not all(math.isfinite(value) for value in row):
                raise ValidationError(f"Row {index} contains a non-finite value")
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_columns(cls, named: Sequence[Tuple[str, Sequence[float]]], **kwargs) -> "ResultTable":
        """Builds a table from (name, values) pairs of equal length."""
        names = [name for name, _ in named]
        lengths = {len(values) for _, values in named}
        if len(lengths) > 1:
            raise ValidationError(f"Columns have different lengths: {sorted(lengths)}")
        rows = zip(*(values for _, values in named))
        return cls(columns=tuple(names), rows=tuple(rows), **kwargs)

    def column(self, name: str) -> Tuple[float, ...]:
        """Values of one column."""
        index = self.columns.index(name)
        return tuple(row[index] for row in self.rows)

    def with_metadata(self, **entries: Any) -> "ResultTable":
        """Copy of the table with extra metadata."""
        return replace(self, metadata={**self.metadata, **entries})
