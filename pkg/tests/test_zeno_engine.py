"""Tests for the zeno_engine module."""

import math
import unittest

import numpy as np

from models.errors import DegenerateFitError, DimensionError, PreconditionError, ValidationError
from models.operators import DensityOperator, Hamiltonian, Projector
from models.rng_stream import RngStream
from models.schedules import ChannelPlacement, MeasurementSchedule
from operator_core import basis_projector, random_hermitian
from reduction_dynamics import computational_basis, dephasing_channel, fourier_basis
from zeno_engine import (
    decoherence_invariance_report,
    default_dt_list,
    effective_hamiltonian,
    leakage_scaling_exponent,
    per_step_leakage,
    run_zeno_deterministic,
    run_zeno_sampled,
    zeno_php_deviation,
)

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
THREE_LEVEL = np.array([[0.0, 1.0, 0.6], [1.0, 0.5, 0.0], [0.6, 0.0, -0.3]])


def qubit_benchmark(omega=math.pi):
    """Rabi Hamiltonian, question |0><0| and the state |0><0|."""
    return (
        Hamiltonian(0.5 * omega * SIGMA_X),
        basis_projector(2, [0]),
        DensityOperator(np.diag([1.0, 0.0])),
    )


def rabi_survival(n_steps, omega=math.pi, total_time=1.0):
    return math.cos(omega * total_time / (2 * n_steps)) ** (2 * n_steps)


class TestDeterministicZeno(unittest.TestCase):
    """Test cases for run_zeno_deterministic."""

    def setUp(self):
        self.hamiltonian, self.projector, self.state = qubit_benchmark()

    def test_matches_rabi_formula(self):
        for n_steps in (10, 100, 1000):
            schedule = MeasurementSchedule(total_time=1.0, n_steps=n_steps)
            trajectory = run_zeno_deterministic(
                self.state, self.hamiltonian, self.projector, schedule
            )
            self.assertEqual(len(trajectory.survival), n_steps + 1)
            self.assertAlmostEqual(trajectory.final_survival, rabi_survival(n_steps), delta=1e-10)

    def test_survival_grows_with_question_rate(self):
        finals = []
        for n_steps in (10, 100, 1000):
            schedule = MeasurementSchedule(total_time=1.0, n_steps=n_steps)
            finals.append(run_zeno_deterministic(
                self.state, self.hamiltonian, self.projector, schedule
            ).final_survival)
        self.assertLess(finals[0], finals[1])
        self.assertLess(finals[1], finals[2])
        self.assertGreater(finals[2], 1.0 - math.pi ** 2 / 2000.0)
        self.assertGreater(finals[2], 0.997)

    def test_commuting_question_never_leaks(self):
        hamiltonian = Hamiltonian(np.diag([1.0, 2.0, 3.0]))
        projector = basis_projector(3, [0, 1])
        state = DensityOperator(np.diag([0.5, 0.5, 0.0]))
        schedule = MeasurementSchedule(total_time=2.0, n_steps=20)
        trajectory = run_zeno_deterministic(state, hamiltonian, projector, schedule)
        np.testing.assert_allclose(trajectory.survival, 1.0, atol=1e-12)

    def test_unnormalized_initial_state(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=10)
        trajectory = run_zeno_deterministic(
            self.state.scaled(0.25), self.hamiltonian, self.projector, schedule
        )
        self.assertAlmostEqual(trajectory.final_survival, rabi_survival(10), delta=1e-10)

    def test_state_outside_question_rejected(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=10)
        outside = DensityOperator(np.diag([0.0, 1.0]))
        with self.assertRaises(PreconditionError):
            run_zeno_deterministic(outside, self.hamiltonian, self.projector, schedule)

    def test_dimension_mismatch(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=10)
        with self.assertRaises(DimensionError):
            run_zeno_deterministic(
                self.state, Hamiltonian(np.eye(3)), self.projector, schedule
            )


class TestSampledZeno(unittest.TestCase):
    """Test cases for run_zeno_sampled."""

    def setUp(self):
        self.hamiltonian, self.projector, self.state = qubit_benchmark()
        self.schedule = MeasurementSchedule(total_time=1.0, n_steps=10)

    def test_agrees_with_deterministic_run(self):
        trials = 10000
        sampled = run_zeno_sampled(
            self.state, self.hamiltonian, self.projector, self.schedule, RngStream(20240601), trials
        )
        exact = run_zeno_deterministic(self.state, self.hamiltonian, self.projector, self.schedule)
        sigma = np.sqrt(exact.survival * (1.0 - exact.survival) / trials)
        deviation = np.abs(sampled.survival - exact.survival)
        self.assertLessEqual(deviation[-1], 3.0 * sigma[-1] + 1e-12)
        # Joint bound over all eleven points of the curve.
        self.assertTrue(np.all(deviation <= 4.0 * sigma + 1e-12))
        self.assertEqual(sampled.trials, trials)
        self.assertEqual(sampled.seed, 20240601)
        self.assertEqual(sampled.survival[0], 1.0)

    def test_single_trial_is_reproducible(self):
        first = run_zeno_sampled(
            self.state, self.hamiltonian, self.projector, self.schedule, RngStream(5), 1
        )
        second = run_zeno_sampled(
            self.state, self.hamiltonian, self.projector, self.schedule, RngStream(5), 1
        )
        np.testing.assert_array_equal(first.survival, second.survival)

    def test_commuting_question_always_survives(self):
        hamiltonian = Hamiltonian(np.diag([0.0, 1.0]))
        sampled = run_zeno_sampled(
            self.state, hamiltonian, self.projector, self.schedule, RngStream(8), 200
        )
        np.testing.assert_array_equal(sampled.survival, 1.0)
        np.testing.assert_array_equal(sampled.std_error, 0.0)

    def test_trials_must_be_positive(self):
        with self.assertRaises(ValidationError):
            run_zeno_sampled(
                self.state, self.hamiltonian, self.projector, self.schedule, RngStream(1), 0
            )


class TestEffectiveDynamics(unittest.TestCase):
    """Test cases for effective_hamiltonian and zeno_php_deviation."""

    def test_effective_hamiltonian(self):
        hamiltonian = Hamiltonian(THREE_LEVEL)
        np.testing.assert_allclose(
            effective_hamiltonian(hamiltonian, Projector(np.eye(3))).matrix, THREE_LEVEL
        )
        block = effective_hamiltonian(hamiltonian, basis_projector(3, [0, 1])).matrix
        expected = np.zeros((3, 3))
        expected[:2, :2] = THREE_LEVEL[:2, :2]
        np.testing.assert_allclose(block, expected)

        rabi, question, _ = qubit_benchmark()
        np.testing.assert_allclose(effective_hamiltonian(rabi, question).matrix, 0.0)

    def test_commuting_question_has_no_deviation(self):
        hamiltonian = Hamiltonian(np.diag([1.0, 2.0, 3.0]))
        projector = basis_projector(3, [0, 1])
        state = DensityOperator.from_vector([0.6, 0.8, 0.0])
        for n_steps in (3, 30):
            self.assertLess(zeno_php_deviation(state, hamiltonian, projector, 1.0, n_steps), 1e-10)

    def test_rank_one_question_freezes_qubit(self):
        hamiltonian, projector, state = qubit_benchmark()
        for n_steps in (10, 100, 1000):
            self.assertLess(zeno_php_deviation(state, hamiltonian, projector, 1.0, n_steps), 1e-12)

    def test_first_order_convergence(self):
        hamiltonian = Hamiltonian(THREE_LEVEL)
        projector = basis_projector(3, [0, 1])
        state = DensityOperator(np.diag([0.5, 0.5, 0.0]))
        coarse = zeno_php_deviation(state, hamiltonian, projector, 1.0, 100)
        fine = zeno_php_deviation(state, hamiltonian, projector, 1.0, 200)
        self.assertGreater(fine, 0.0)
        self.assertGreaterEqual(coarse / fine, 1.5)
        self.assertLessEqual(coarse / fine, 2.5)


class TestLeakageScaling(unittest.TestCase):
    """Test cases for leakage_scaling_exponent."""

    def test_qubit_exponent(self):
        hamiltonian, projector, state = qubit_benchmark()
        self.assertAlmostEqual(
            leakage_scaling_exponent(state, hamiltonian, projector), 2.0, delta=0.05
        )

    def test_qubit_leakage_matches_rabi(self):
        hamiltonian, projector, state = qubit_benchmark()
        leaked = per_step_leakage(state, hamiltonian, projector, 0.01)
        self.assertAlmostEqual(leaked, math.sin(math.pi * 0.01 / 2) ** 2, delta=1e-14)

    def test_random_real_hamiltonian(self):
        hamiltonian = random_hermitian(8, np.random.default_rng(7), real=True)
        projector = basis_projector(8, [0, 1, 2])
        state = DensityOperator(projector.matrix / 3.0)
        exponent = leakage_scaling_exponent(state, hamiltonian, projector)
        self.assertGreaterEqual(exponent, 1.9)
        self.assertLessEqual(exponent, 2.1)

    def test_default_ladder(self):
        hamiltonian = Hamiltonian(np.diag([-2.0, 1.0]))
        steps = default_dt_list(hamiltonian)
        self.assertEqual(len(steps), 5)
        self.assertAlmostEqual(steps[0], 0.05)
        self.assertAlmostEqual(steps[-1], 0.05 / 16)

    def test_commuting_question_is_degenerate(self):
        hamiltonian = Hamiltonian(np.diag([1.0, 2.0]))
        state = DensityOperator(np.diag([1.0, 0.0]))
        with self.assertRaises(DegenerateFitError):
            leakage_scaling_exponent(state, hamiltonian, basis_projector(2, [0]))

    def test_zero_hamiltonian_is_degenerate(self):
        with self.assertRaises(DegenerateFitError):
            default_dt_list(Hamiltonian(np.zeros((2, 2))))

    def test_step_list_validation(self):
        hamiltonian, projector, state = qubit_benchmark()
        with self.assertRaises(ValidationError):
            leakage_scaling_exponent(state, hamiltonian, projector, [0.01, 0.005, 0.001])
        with self.assertRaises(ValidationError):
            leakage_scaling_exponent(state, hamiltonian, projector, [0.01, 0.008, 0.006, 0.004])

    def test_large_steps_rejected(self):
        hamiltonian, projector, state = qubit_benchmark()
        with self.assertRaises(PreconditionError):
            leakage_scaling_exponent(state, hamiltonian, projector, [0.5, 0.2, 0.1, 0.05])


class TestDecoherenceInvariance(unittest.TestCase):
    """Test cases for decoherence_invariance_report."""

    def setUp(self):
        self.hamiltonian, self.projector, self.state = qubit_benchmark()
        self.strengths = (0.0, 0.25, 0.5, 1.0)

    def test_commuting_basis_for_both_placements(self):
        for placement in (ChannelPlacement.AFTER_QUESTION, ChannelPlacement.BEFORE_QUESTION):
            schedule = MeasurementSchedule(total_time=1.0, n_steps=50, placement=placement)
            report = decoherence_invariance_report(
                self.state, self.hamiltonian, self.projector, schedule, self.strengths
            )
            self.assertTrue(report.commutes)
            self.assertIsNone(report.warning)
            self.assertLessEqual(report.max_deviation, 1e-12)
            self.assertLessEqual(report.max_question_deviation, 1e-12)
            self.assertEqual(report.strengths, self.strengths)

    def test_projector_pair_basis(self):
        hamiltonian = Hamiltonian(THREE_LEVEL)
        projector = basis_projector(3, [0, 1])
        state = DensityOperator.from_vector([0.6, 0.8, 0.0])
        schedule = MeasurementSchedule(total_time=1.0, n_steps=40)
        report = decoherence_invariance_report(
            state, hamiltonian, projector, schedule, self.strengths, basis=projector
        )
        self.assertTrue(report.commutes)
        self.assertLessEqual(report.max_deviation, 1e-12)

    def test_non_commuting_basis_is_reported(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=20)
        with self.assertLogs("zeno_engine", level="WARNING") as logs:
            report = decoherence_invariance_report(
                self.state, self.hamiltonian, self.projector, schedule, (0.0, 1.0),
                basis=fourier_basis(2),
            )
        self.assertFalse(report.commutes)
        self.assertGreater(report.max_deviation, 1e-6)
        self.assertIn("does not commute", report.warning)
        self.assertTrue(any("does not commute" in line for line in logs.output))

    def test_channel_at_full_strength_keeps_curve(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=10)
        channel = dephasing_channel(computational_basis(2), 1.0)
        plain = run_zeno_deterministic(self.state, self.hamiltonian, self.projector, schedule)
        dephased = run_zeno_deterministic(
            self.state, self.hamiltonian, self.projector, schedule, channel
        )
        np.testing.assert_allclose(dephased.survival, plain.survival, atol=1e-12)

    def test_requires_strengths(self):
        schedule = MeasurementSchedule(total_time=1.0, n_steps=10)
        with self.assertRaises(ValidationError):
            decoherence_invariance_report(
                self.state, self.hamiltonian, self.projector, schedule, ()
            )


if __name__ == "__main__":
    unittest.main()
