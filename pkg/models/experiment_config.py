"""Experiment configuration models.

An ExperimentConfig is the parsed form of one config document. Sections are
plain frozen dataclasses; config_parser does the validation and defaulting so
that every problem in a document is reported at once.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

Matrix = Tuple[Tuple[float, ...], ...]


@dataclass(frozen=True)
class HamiltonianSpec:
    """How to build H.

    Attributes:
        preset: One of the HamiltonianPresets values.
        omega: Angular frequency of the rabi preset.
        entries: Real part of a dense H.
        entries_imag: Imaginary part of a dense H.
        dimension: Dimension of a random-real H.
        matrix_seed: Seed of a random-real H.
        scale: Entry range of a random-real H.
    """

    preset: str = "rabi"
    omega: float = math.pi
    entries: Optional[Matrix] = None
    entries_imag: Optional[Matrix] = None
    dimension: Optional[int] = None
    matrix_seed: Optional[int] = None
    scale: float = 1.0


@dataclass(frozen=True)
class ProjectorSpec:
    """The band question P: computational-basis levels or dense entries."""

    levels: Optional[Tuple[int, ...]] = (0,)
    entries: Optional[Matrix] = None


@dataclass(frozen=True)
class CoherentComponent:
    """One weighted coherent state of a quasi-classical mixture."""

    alpha_re: float
    alpha_im: float = 0.0
    weight: float = 1.0


@dataclass(frozen=True)
class OscillatorSection:
    """Driven oscillator, its energy band and its initial mixture."""

    dim: int = 32
    omega: float = 1.0
    drive: float = 0.2
    band_min: int = 8
    band_max: int = 16
    components: Tuple[CoherentComponent, ...] = (CoherentComponent(alpha_re=math.sqrt(8.0)),)


@dataclass(frozen=True)
class StateSpec:
    """Initial state S0.

    With neither field set, S0 is P/rank(P).

    Attributes:
        levels: Uniform mixture over these computational-basis levels.
        vector: Real amplitudes of a pure state.
    """

    levels: Optional[Tuple[int, ...]] = None
    vector: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class ScheduleSpec:
    """Question schedule and optional dephasing during a Zeno run."""

    total_time: float = 1.0
    n_steps: int = 100
    dt: float = 0.01
    placement: str = "after-question"
    strength: float = 0.0


@dataclass(frozen=True)
class InvarianceSpec:
    """Dephasing strengths compared by a decoherence-invariance run."""

    strengths: Tuple[float, ...] = (0.0, 0.25, 0.5, 1.0)
    basis: str = "computational"


@dataclass(frozen=True)
class AttentionSpec:
    """Question family and effort levels of an attention sweep.

    Attributes:
        candidates: Computational-basis levels of each candidate question.
        labels: Candidate labels; generated when empty.
        efforts: Effort levels e.
        base_interval: dt0.
        threshold: Hold threshold θ.
        consent: Consent pattern, repeated cyclically.
        instants: Explicit instants instead of uniform spacing.
        branch_keeping: Follow the Yes branch without sampling.
    """

    candidates: Tuple[Tuple[int, ...], ...] = ((0,),)
    labels: Tuple[str, ...] = ()
    efforts: Tuple[float, ...] = (0.0, 1.0, 4.0, 9.0)
    base_interval: float = 0.1
    threshold: float = 0.9
    consent: Tuple[bool, ...] = (True,)
    instants: Optional[Tuple[float, ...]] = None
    branch_keeping: bool = False


@dataclass(frozen=True)
class AnalysisSpec:
    """Extra scalars computed by Zeno runs.

    Attributes:
        fit_exponent: Fit the per-step leakage exponent.
        php_deviation: Compare the run with evolution under P·H·P.
        step_counts: Also report the final survival at these step counts.
    """

    fit_exponent: bool = True
    php_deviation: bool = False
    step_counts: Tuple[int, ...] = ()


@dataclass(frozen=True)
class OutputSpec:
    """Where results go."""

    directory: str = "results"
    prefix: Optional[str] = None


# pylint: disable=too-many-instance-attributes
@dataclass(frozen=True)
class ExperimentConfig:
    """A complete, validated experiment description.

    Attributes:
        kind: One of the ExperimentKinds values.
        seed: Root seed; required whenever trials > 0.
        trials: Sampled trials; 0 runs deterministically and draws nothing.
    """

    kind: str
    seed: Optional[int] = None
    trials: int = 0
    hamiltonian: HamiltonianSpec = field(default_factory=HamiltonianSpec)
    projector: ProjectorSpec = field(default_factory=ProjectorSpec)
    state: StateSpec = field(default_factory=StateSpec)
    schedule: ScheduleSpec = field(default_factory=ScheduleSpec)
    oscillator: OscillatorSection = field(default_factory=OscillatorSection)
    invariance: InvarianceSpec = field(default_factory=InvarianceSpec)
    attention: AttentionSpec = field(default_factory=AttentionSpec)
    analysis: AnalysisSpec = field(default_factory=AnalysisSpec)
    output: OutputSpec = field(default_factory=OutputSpec)

    @property
    def name(self) -> str:
        """File stem for the outputs of this config."""
        return self.output.prefix or self.kind

    def dimension(self) -> Optional[int]:
        """Dimension of the state space, when the config fixes it."""
        spec = self.hamiltonian
        if spec.preset == "rabi":
            return 2
        if spec.preset == "oscillator":
            return self.oscillator.dim
        if spec.preset == "random-real":
            return spec.dimension
        if spec.entries is not None:
            return len(spec.entries)
        return None

    def consistency_errors(self) -> List[str]:
        """Cross-section problems; empty when the config is consistent."""
        errors = []
        dim = self.dimension()
        if self.trials > 0 and self.seed is None:
            errors.append("seed: required when trials > 0")
        if self.kind == "zeno-qubit" and dim not in (None, 2):
            errors.append(f"hamiltonian: zeno-qubit needs dimension 2, got {dim}")
        if self.kind == "oscillator-band" and self.hamiltonian.preset != "oscillator":
            errors.append("hamiltonian.preset: oscillator-band needs the oscillator preset")
        if self.kind == "attention-sweep" and not self.attention.branch_keeping:
            if self.trials < 1:
                errors.append("trials: sampled attention sweeps need trials >= 1")
        if dim is None or self.hamiltonian.preset == "oscillator":
            return errors
        levels = list(self.projector.levels or ())
        levels += list(self.state.levels or ())
        for candidate in self.attention.candidates:
            levels += list(candidate)
        if any(level >= dim for level in levels):
            errors.append(f"levels: every level must be below dimension {dim}")
        if self.projector.entries is not None and len(self.projector.entries) != dim:
            errors.append(f"projector.entries: expected dimension {dim}")
        if self.state.vector is not None and len(self.state.vector) != dim:
            errors.append(f"state.vector: expected {dim} amplitudes")
        return errors
