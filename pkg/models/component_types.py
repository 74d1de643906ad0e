"""Type definitions for experiment runner components."""

from enum import Enum, auto


class OutputWriters(Enum):
    """Available output writer types."""
    DEFAULT = auto()       # CsvWriter and JsonSummaryWriter
    CSV = auto()
    JSON_SUMMARY = auto()


class ExperimentKinds(Enum):
    """Experiments the runner knows how to execute."""
    ZENO_QUBIT = "zeno-qubit"
    ZENO_GENERIC = "zeno-generic"
    OSCILLATOR_BAND = "oscillator-band"
    ATTENTION_SWEEP = "attention-sweep"
    DECOHERENCE_INVARIANCE = "decoherence-invariance"


class HamiltonianPresets(Enum):
    """Ways a config can name its Hamiltonian."""
    RABI = "rabi"                  # (omega/2)·σ_x on a qubit
    DENSE = "dense"                # explicit entries
    RANDOM_REAL = "random-real"    # seeded real symmetric matrix
    OSCILLATOR = "oscillator"      # driven truncated oscillator


class DephasingBases(Enum):
    """Pointer bases for dephasing channels."""
    COMPUTATIONAL = "computational"
    PROJECTOR_PAIR = "projector-pair"
