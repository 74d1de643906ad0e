"""Tests for operator models."""

import unittest

import numpy as np

from models.errors import DimensionError, InvalidStateError, ValidationError
from models.operators import (
    DensityOperator,
    Hamiltonian,
    Projector,
    SubsystemPartition,
    as_complex_matrix,
    inspect_density,
)


class TestAsComplexMatrix(unittest.TestCase):
    """Test cases for matrix conversion."""

    def test_result_is_read_only(self):
        matrix = as_complex_matrix([[1, 0], [0, 1]])
        self.assertEqual(matrix.dtype, np.complex128)
        with self.assertRaises(ValueError):
            matrix[0, 0] = 2.0

    def test_rejects_non_square(self):
        with self.assertRaises(DimensionError):
            as_complex_matrix([[1, 0, 0], [0, 1, 0]])

    def test_rejects_non_finite(self):
        with self.assertRaises(ValidationError):
            as_complex_matrix([[np.nan, 0], [0, 1]])


class TestDensityOperator(unittest.TestCase):
    """Test cases for DensityOperator."""

    def test_valid_state(self):
        state = DensityOperator(np.diag([0.25, 0.75]))
        self.assertEqual(state.dim, 2)
        self.assertAlmostEqual(state.trace, 1.0)

    def test_unnormalized_state_allowed(self):
        state = DensityOperator(np.diag([3.0, 7.0]))
        self.assertAlmostEqual(state.trace, 10.0)

    def test_zero_trace_rejected(self):
        with self.assertRaises(InvalidStateError):
            DensityOperator(np.zeros((2, 2)))

    def test_non_hermitian_rejected(self):
        with self.assertRaises(ValidationError):
            DensityOperator(np.array([[0.5, 0.1], [0.3, 0.5]]))

    def test_negative_eigenvalue_rejected(self):
        with self.assertRaises(ValidationError):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_from_vector(self):
        state = DensityOperator.from_vector([1.0, 1.0], weight=0.5)
        np.testing.assert_allclose(state.matrix, 0.25 * np.ones((2, 2)), atol=1e-15)

    def test_from_trusted_hermitizes(self):
        state = DensityOperator.from_trusted(np.array([[0.5, 1e-14], [0.0, 0.5]]))
        np.testing.assert_allclose(state.matrix, state.matrix.conj().T)

    def test_scaled(self):
        state = DensityOperator(np.diag([0.5, 0.5])).scaled(4.0)
        self.assertAlmostEqual(state.trace, 4.0)
        with self.assertRaises(ValidationError):
            state.scaled(0.0)

    def test_inspect_density_reports_all_failures(self):
        report = inspect_density(np.array([[-1.0, 1.0], [0.0, -1.0]], dtype=complex))
        self.assertFalse(report.passed)
        self.assertEqual(len(report.failures), 3)


class TestProjector(unittest.TestCase):
    """Test cases for Projector."""

    def test_rank_and_complement(self):
        projector = Projector(np.diag([1.0, 1.0, 0.0]))
        self.assertEqual(projector.rank, 2)
        np.testing.assert_allclose(projector.complement, np.diag([0.0, 0.0, 1.0]))

    def test_not_idempotent(self):
        with self.assertRaises(ValidationError):
            Projector(np.diag([0.5, 0.0]))

    def test_zero_projector_rejected(self):
        with self.assertRaises(ValidationError):
            Projector(np.zeros((2, 2)))

    def test_not_hermitian(self):
        with self.assertRaises(ValidationError):
            Projector(np.array([[1.0, 1.0], [0.0, 0.0]]))

    def test_identity_has_zero_complement(self):
        projector = Projector(np.eye(3))
        self.assertEqual(projector.rank, 3)
        self.assertFalse(np.any(projector.complement))


class TestHamiltonian(unittest.TestCase):
    """Test cases for Hamiltonian."""

    def test_spectral_radius(self):
        hamiltonian = Hamiltonian(np.diag([-3.0, 1.0]))
        self.assertAlmostEqual(hamiltonian.spectral_radius, 3.0)

    def test_non_hermitian_rejected(self):
        with self.assertRaises(ValidationError):
            Hamiltonian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSubsystemPartition(unittest.TestCase):
    """Test cases for SubsystemPartition."""

    def test_dimensions(self):
        partition = SubsystemPartition((2, 3, 4), kept_factor=1)
        self.assertEqual(partition.total_dim, 24)
        self.assertEqual(partition.kept_dim, 3)

    def test_invalid_partitions(self):
        with self.assertRaises(DimensionError):
            SubsystemPartition((2, 0), kept_factor=0)
        with self.assertRaises(DimensionError):
            SubsystemPartition((2, 2), kept_factor=2)
        with self.assertRaises(DimensionError):
            SubsystemPartition((), kept_factor=0)


if __name__ == "__main__":
    unittest.main()
