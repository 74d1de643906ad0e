"""Tests for measurement schedules and effort policies."""

import unittest

import numpy as np

from models.errors import ValidationError
from models.schedules import ChannelPlacement, EffortPolicy, MeasurementSchedule


class TestMeasurementSchedule(unittest.TestCase):
    """Test cases for MeasurementSchedule."""

    def test_dt_and_times(self):
        schedule = MeasurementSchedule(total_time=2.0, n_steps=4)
        self.assertAlmostEqual(schedule.dt, 0.5)
        np.testing.assert_allclose(schedule.times, [0.0, 0.5, 1.0, 1.5, 2.0])
        self.assertIs(schedule.placement, ChannelPlacement.AFTER_QUESTION)

    def test_placement_from_string(self):
        schedule = MeasurementSchedule(1.0, 10, placement="before-question")
        self.assertIs(schedule.placement, ChannelPlacement.BEFORE_QUESTION)

    def test_invalid_values(self):
        with self.assertRaises(ValidationError):
            MeasurementSchedule(total_time=1.0, n_steps=0)
        with self.assertRaises(ValidationError):
            MeasurementSchedule(total_time=0.0, n_steps=10)
        with self.assertRaises(ValidationError):
            MeasurementSchedule(total_time=1.0, n_steps=10, channel_strength=1.5)
        with self.assertRaises(ValidationError):
            MeasurementSchedule(total_time=1.0, n_steps=True)

    def test_from_dt(self):
        schedule = MeasurementSchedule.from_dt(1.0, 0.1)
        self.assertEqual(schedule.n_steps, 10)
        with self.assertRaises(ValidationError):
            MeasurementSchedule.from_dt(1.0, 0.3)

    def test_with_steps(self):
        schedule = MeasurementSchedule(1.0, 10, channel_strength=0.5).with_steps(20)
        self.assertEqual(schedule.n_steps, 20)
        self.assertEqual(schedule.channel_strength, 0.5)


class TestEffortPolicy(unittest.TestCase):
    """Test cases for EffortPolicy."""

    def test_dt_decreases_with_effort(self):
        policy = EffortPolicy(base_interval=0.1)
        self.assertEqual(policy.dt, 0.1)
        intervals = [policy.with_effort(e).dt for e in (0.0, 1.0, 4.0, 9.0)]
        self.assertTrue(all(b < a for a, b in zip(intervals, intervals[1:])))
        self.assertAlmostEqual(intervals[-1], 0.01)

    def test_last_instant_clipped_to_total_time(self):
        times = EffortPolicy(base_interval=0.3).instant_times(1.0)
        np.testing.assert_allclose(times, [0.3, 0.6, 0.9, 1.0])

    def test_uniform_instants_end_at_total_time(self):
        times = EffortPolicy(base_interval=0.1).instant_times(1.0)
        self.assertEqual(len(times), 10)
        self.assertEqual(times[-1], 1.0)

    def test_explicit_instants(self):
        policy = EffortPolicy(base_interval=0.1, instants=(0.2, 0.5, 2.0))
        np.testing.assert_allclose(policy.instant_times(1.0), [0.2, 0.5])

    def test_consent_cycles(self):
        policy = EffortPolicy(base_interval=0.1, consent=(True, False))
        self.assertEqual([policy.consent_at(i) for i in range(4)], [True, False, True, False])

    def test_invalid_values(self):
        with self.assertRaises(ValidationError):
            EffortPolicy(base_interval=0.0)
        with self.assertRaises(ValidationError):
            EffortPolicy(base_interval=0.1, effort=-1.0)
        with self.assertRaises(ValidationError):
            EffortPolicy(base_interval=0.1, consent=())
        with self.assertRaises(ValidationError):
            EffortPolicy(base_interval=0.1, instants=(0.5, 0.2))


if __name__ == "__main__":
    unittest.main()
