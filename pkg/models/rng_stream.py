"""Seeded random streams.

Each trajectory owns one stream. Child streams for parallel trials are derived
from (seed, trial index) through numpy's SeedSequence spawn keys, so results do
not depend on the order in which trials run.
"""

from typing import Tuple

import numpy as np

from models.errors import ValidationError

MAX_SEED = 2**64


class RngStream:
    """A reproducible PCG64 stream of uniform variates.

    Attributes:
        seed: 64-bit seed.
        spawn_key: Path of trial indices from the root stream.
        algorithm: Name of the bit generator.
        draws: Number of variates consumed so far.
    """

    algorithm = "PCG64"

    def __init__(self, seed: int, spawn_key: Tuple[int, ...] = ()):
        """Creates a stream.

        Args:
            seed: Integer in [0, 2**64).
            spawn_key: Trial indices identifying a child stream.

        Raises:
            ValidationError: If the seed is out of range.
        """
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise ValidationError(f"Seed must be an integer, got {seed!r}")
        if not 0 <= int(seed) < MAX_SEED:
            raise ValidationError(f"Seed must fit in 64 bits, got {seed}")
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self.draws = 0

    def uniform(self) -> float:
        """Next variate in [0, 1)."""
        self.draws += 1
        return float(self._generator.random())

    def spawn(self, index: int) -> "RngStream":
        """Independent child stream for trial index."""
        return RngStream(self.seed, self.spawn_key + (index,))

    def __repr__(self) -> str:
        return (
            f"RngStream(seed={self.seed}, spawn_key={self.spawn_key}, "
            f"algorithm={self.algorithm}, draws={self.draws})"
        )
