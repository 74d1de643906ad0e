"""Run experiments described by configs."""

import logging
import os
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import scipy

from attention_model import effort_sweep
from config_parser import config_digest
from models.channels import KrausChannel
from models.component_types import DephasingBases, ExperimentKinds, HamiltonianPresets
from models.errors import SimulationError
from models.experiment_config import ExperimentConfig
from models.operators import DensityOperator, Hamiltonian, Projector
from models.oscillator_specs import BandSpec, OscillatorSpec
from models.output_paths import OutputPath
from models.question_family import QuestionFamily
from models.result_table import ResultTable
from models.rng_stream import RngStream
from models.schedules import ChannelPlacement, EffortPolicy, MeasurementSchedule
from operator_core import basis_projector, random_hermitian
from oscillator_model import (
    band_projector,
    build_oscillator,
    quasiclassical_mixture,
    run_band_zeno,
    truncate_to_band,
)
from output_writer import OutputWriter
from reduction_dynamics import computational_basis, dephasing_channel
from run_stats import RunStats
from zeno_engine import (
    decoherence_invariance_report,
    leakage_scaling_exponent,
    run_zeno_deterministic,
    run_zeno_sampled,
    zeno_php_deviation,
)
from zeno_simulator.version import __version__

logger = logging.getLogger(__name__)

ZENO_COLUMNS = ("time", "survival", "in_band_population")
SWEEP_COLUMNS = ("effort", "dt", "mean_hold_duration", "std_error")

Operators = Tuple[Hamiltonian, Projector, DensityOperator]


def build_hamiltonian(config: ExperimentConfig) -> Hamiltonian:
    """Builds H from the hamiltonian section."""
    spec = config.hamiltonian
    preset = HamiltonianPresets(spec.preset)
    if preset is HamiltonianPresets.RABI:
        return Hamiltonian(0.5 * spec.omega * np.array([[0.0, 1.0], [1.0, 0.0]]))
    if preset is HamiltonianPresets.OSCILLATOR:
        return build_oscillator(oscillator_spec(config))
    if preset is HamiltonianPresets.RANDOM_REAL:
        rng = np.random.default_rng(spec.matrix_seed)
        return random_hermitian(spec.dimension, rng, scale=spec.scale, real=True)
    real = np.array(spec.entries, dtype=float)
    imag = np.array(spec.entries_imag, dtype=float) if spec.entries_imag is not None else 0.0
    return Hamiltonian(real + 1j * imag)


def oscillator_spec(config: ExperimentConfig) -> OscillatorSpec:
    """Oscillator of the oscillator section."""
    section = config.oscillator
    return OscillatorSpec(dim=section.dim, omega=section.omega, drive=section.drive)


def oscillator_band(config: ExperimentConfig) -> BandSpec:
    """Energy band of the oscillator section."""
    return BandSpec(config.oscillator.band_min, config.oscillator.band_max)


def build_operators(config: ExperimentConfig) -> Operators:
    """Builds (H, P, S0) for a config.

    The oscillator preset takes P from the band and S0 from the coherent
    mixture truncated into it; other presets use the projector and state
    sections, with S0 = P/rank(P) by default.
    """
    hamiltonian = build_hamiltonian(config)
    dim = hamiltonian.dim
    if config.hamiltonian.preset == HamiltonianPresets.OSCILLATOR.value:
        band = oscillator_band(config)
        components = [
            (complex(c.alpha_re, c.alpha_im), c.weight) for c in config.oscillator.components
        ]
        mixture = quasiclassical_mixture(components, dim)
        state, tail = truncate_to_band(mixture, band)
        logger.info("Truncated %.4g of the mixture outside band [%d, %d]",
                    tail, band.n_min, band.n_max)
        return hamiltonian, band_projector(band, dim), state

    spec = config.projector
    if spec.levels is not None:
        projector = basis_projector(dim, spec.levels)
    else:
        projector = Projector(np.array(spec.entries, dtype=float))

    if config.state.vector is not None:
        state = DensityOperator.from_vector(config.state.vector)
        state = state.scaled(1.0 / state.trace)
    elif config.state.levels is not None:
        state = DensityOperator(basis_projector(dim, config.state.levels).matrix
                                / len(config.state.levels))
    else:
        state = DensityOperator(projector.matrix / projector.rank)
    return hamiltonian, projector, state


def build_schedule(config: ExperimentConfig) -> MeasurementSchedule:
    """Measurement schedule of the schedule section."""
    spec = config.schedule
    return MeasurementSchedule(
        total_time=spec.total_time,
        n_steps=spec.n_steps,
        channel_strength=spec.strength,
        placement=ChannelPlacement(spec.placement),
    )


def build_channel(schedule: MeasurementSchedule, dim: int) -> Optional[KrausChannel]:
    """Computational-basis dephasing when the schedule asks for any."""
    if schedule.channel_strength == 0.0 or schedule.placement is ChannelPlacement.NONE:
        return None
    return dephasing_channel(computational_basis(dim), schedule.channel_strength)


class ExperimentRunner:
    """Runs experiments and hands their tables to the output writers."""

    def __init__(self, output_writers: List[OutputWriter], stats: RunStats):
        """Initialize the runner.

        Args:
            output_writers: Writers for the result table; may be empty.
            stats: Run statistics tracker.
        """
        self.output_writers = output_writers
        self.stats = stats
        self._dispatch: Dict[ExperimentKinds, Callable[[ExperimentConfig], ResultTable]] = {
            ExperimentKinds.ZENO_QUBIT: self._run_zeno,
            ExperimentKinds.ZENO_GENERIC: self._run_zeno,
            ExperimentKinds.OSCILLATOR_BAND: self._run_zeno,
            ExperimentKinds.DECOHERENCE_INVARIANCE: self._run_invariance,
            ExperimentKinds.ATTENTION_SWEEP: self._run_attention,
        }

    def run(self, config: ExperimentConfig) -> ResultTable:
        """Runs one experiment.

        The result depends only on the config: deterministic runs draw no
        random numbers and sampled runs draw from streams rooted at the seed.

        Raises:
            SimulationError: Any simulator error, logged with the experiment name.
        """
        kind = ExperimentKinds(config.kind)
        logger.info("Running %s experiment %s", kind.value, config.name)
        try:
            table = self._dispatch[kind](config)
        except SimulationError as e:
            logger.error("Experiment %s failed: %s", config.name, e)
            raise
        return table.with_metadata(
            experiment=config.name,
            kind=kind.value,
            config_digest=config_digest(config),
            seed=config.seed if config.trials > 0 else None,
            trials=config.trials,
            version=__version__,
            numpy_version=np.__version__,
            scipy_version=scipy.__version__,
        )

    def run_and_write(self, config: ExperimentConfig, output_dir: str,
                      overwrite: bool = False) -> Tuple[ResultTable, RunStats]:
        """Runs an experiment and writes its outputs into output_dir.

        Raises:
            FileExistsError: If an output exists and overwrite is False.
        """
        paths = [
            OutputPath.in_directory(output_dir, config.name, writer.suffix)
            for writer in self.output_writers
        ]
        for path in paths:
            if os.path.exists(str(path)) and not overwrite:
                logger.error("Output file already exists: %s", path)
                raise FileExistsError(
                    f"Output file already exists: {path}. Use overwrite to replace it."
                )

        self.stats.start_run(config.name)
        table = self.run(config)
        self.stats.finish_run()
        table = table.with_metadata(wall_time_seconds=self.stats.wall_time_seconds)

        for writer, path in zip(self.output_writers, paths):
            writer.configure(str(path))
            writer.write_table(table)
            self.stats.track_file_written(str(path))
        self.stats.track_rows(len(table.rows))
        return table, self.stats

    def _run_zeno(self, config: ExperimentConfig) -> ResultTable:
        hamiltonian, projector, state = build_operators(config)
        schedule = build_schedule(config)
        channel = build_channel(schedule, hamiltonian.dim)
        if config.kind == ExperimentKinds.OSCILLATOR_BAND.value:
            spec, band = oscillator_spec(config), oscillator_band(config)

            def simulate(sched):
                return run_band_zeno(spec, band, state, sched, channel)
        else:
            def simulate(sched):
                return run_zeno_deterministic(state, hamiltonian, projector, sched, channel)

        trajectory = simulate(schedule)
        self.stats.track_steps(schedule.n_steps)
        named = list(zip(ZENO_COLUMNS, (
            trajectory.times, trajectory.survival, trajectory.in_band_population,
        )))
        scalars = {"final_survival": trajectory.final_survival}

        if config.trials > 0:
            sampled = run_zeno_sampled(
                state, hamiltonian, projector, schedule,
                RngStream(config.seed), config.trials, channel,
            )
            self.stats.track_trials(config.trials)
            named += [
                ("sampled_survival", sampled.survival),
                ("sampled_std_error", sampled.std_error),
            ]
            scalars["final_sampled_survival"] = float(sampled.survival[-1])

        for n_steps in config.analysis.step_counts:
            scalars[f"final_survival_n={n_steps}"] = simulate(
                schedule.with_steps(n_steps)
            ).final_survival
            self.stats.track_steps(n_steps)
        if config.analysis.fit_exponent:
            scalars["leakage_exponent"] = leakage_scaling_exponent(state, hamiltonian, projector)
        if config.analysis.php_deviation:
            coarse = zeno_php_deviation(
                state, hamiltonian, projector, schedule.total_time, schedule.n_steps
            )
            fine = zeno_php_deviation(
                state, hamiltonian, projector, schedule.total_time, 2 * schedule.n_steps
            )
            self.stats.track_steps(3 * schedule.n_steps)
            scalars["php_deviation"] = coarse
            scalars["php_deviation_fine"] = fine
            scalars["php_convergence_ratio"] = coarse / fine if fine > 0.0 else None
        return ResultTable.from_columns(named, scalars=_plain(scalars))

    def _run_invariance(self, config: ExperimentConfig) -> ResultTable:
        hamiltonian, projector, state = build_operators(config)
        schedule = build_schedule(config)
        basis = None
        if config.invariance.basis == DephasingBases.PROJECTOR_PAIR.value:
            basis = projector
        report = decoherence_invariance_report(
            state, hamiltonian, projector, schedule, config.invariance.strengths, basis
        )
        self.stats.track_steps(schedule.n_steps * len(report.strengths))
        named = [("time", report.times)]
        named += [(f"survival_p={s!r}", report.curves[s]) for s in report.strengths]
        scalars = {
            "max_invariance_deviation": report.max_deviation,
            "max_question_deviation": report.max_question_deviation,
            "commutes": report.commutes,
            "final_survival": float(report.curves[report.strengths[0]][-1]),
        }
        return ResultTable.from_columns(named, scalars=_plain(scalars))

    def _run_attention(self, config: ExperimentConfig) -> ResultTable:
        hamiltonian, _, state = build_operators(config)
        spec = config.attention
        family = QuestionFamily.of(
            [basis_projector(hamiltonian.dim, levels) for levels in spec.candidates],
            spec.labels or None,
        )
        policy = EffortPolicy(
            base_interval=spec.base_interval,
            consent=spec.consent,
            instants=spec.instants,
        )
        rng = RngStream(config.seed) if config.trials > 0 else None
        rows = effort_sweep(
            state, hamiltonian, family, spec.efforts, config.schedule.total_time,
            max(config.trials, 1), rng, policy,
            threshold=spec.threshold,
            branch_keeping=spec.branch_keeping,
        )
        if not spec.branch_keeping:
            self.stats.track_trials(config.trials * len(rows))
        table_rows = [(r.effort, r.dt, r.mean_hold_duration, r.std_error) for r in rows]
        scalars = {
            "threshold": spec.threshold,
            "branch_keeping": spec.branch_keeping,
            "baseline_hold_duration": rows[0].mean_hold_duration,
            "max_effort_hold_duration": rows[-1].mean_hold_duration,
            "hold_gain": rows[-1].mean_hold_duration - rows[0].mean_hold_duration,
        }
        return ResultTable(columns=SWEEP_COLUMNS, rows=tuple(table_rows), scalars=_plain(scalars))


def _plain(scalars: Dict[str, object]) -> Dict[str, object]:
    """Converts numpy scalars to built-in types for JSON."""
    plain = {}
    for key, value in scalars.items():
        if isinstance(value, (bool, np.bool_)):
            plain[key] = bool(value)
        elif isinstance(value, (int, float, np.floating, np.integer)):
            plain[key] = float(value)
        else:
            plain[key] = value
    return plain


def run_experiment(config: ExperimentConfig) -> ResultTable:
    """Runs an experiment without writing any output."""
    return ExperimentRunner(output_writers=[], stats=RunStats()).run(config)
