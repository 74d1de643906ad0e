"""Tests for simulator_main module."""

import io
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import MagicMock, patch

from models.errors import DegenerateFitError, ValidationError
from models.result_table import ResultTable
from simulator_main import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    OUTPUT_DIR_ENV,
    main,
)


class TestSimulatorMain(unittest.TestCase):

    def setUp(self):
        """Set up test case."""
        self.work_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.work_dir, "qubit.json")
        with open(self.config_path, "w", encoding="utf-8") as f:
            f.write('{"kind": "zeno-qubit", "schedule": {"n_steps": 10}}')
        self.mock_runner = MagicMock()
        table = ResultTable(columns=("time",), scalars={"final_survival": 0.78})
        stats = MagicMock()
        stats.get_summary_text.return_value = "Run Summary"
        self.mock_runner.run_and_write.return_value = (table, stats)

    def tearDown(self):
        """Clean up test case."""
        shutil.rmtree(self.work_dir)

    def _run(self, args):
        out, err = io.StringIO(), io.StringIO()
        with patch(
            "experiment_runner_factory.ExperimentRunnerFactory.create",
            return_value=self.mock_runner,
        ):
            with redirect_stdout(out), redirect_stderr(err):
                result = main(args)
        return result, out.getvalue(), err.getvalue()

    def test_main_requires_command(self):
        """Test that main requires a subcommand."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                main([])

    def test_simulate_needs_exactly_one_source(self):
        """Test that simulate takes a config path or a preset, not both."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                main(["simulate"])
            with self.assertRaises(SystemExit):
                main(["simulate", self.config_path, "--preset", "zeno-qubit"])

    def test_simulate_config_file(self):
        """Test running a config file."""
        out_dir = os.path.join(self.work_dir, "out")
        result, out, _ = self._run(["simulate", self.config_path, "--out", out_dir])

        self.assertEqual(result, EXIT_OK)
        config, output_dir = self.mock_runner.run_and_write.call_args.args
        self.assertEqual(config.kind, "zeno-qubit")
        self.assertEqual(config.schedule.n_steps, 10)
        self.assertEqual(output_dir, out_dir)
        self.assertEqual(self.mock_runner.run_and_write.call_args.kwargs, {"overwrite": False})
        self.assertIn("final_survival: 0.78", out)
        self.assertIn("Run Summary", out)

    def test_simulate_preset_with_seed(self):
        """Test the preset and seed options."""
        result, _, _ = self._run(
            ["simulate", "--preset", "zeno-qubit-sampled", "--seed", "11", "--overwrite"]
        )
        self.assertEqual(result, EXIT_OK)
        config, output_dir = self.mock_runner.run_and_write.call_args.args
        self.assertEqual(config.seed, 11)
        self.assertEqual(config.trials, 10000)
        self.assertEqual(self.mock_runner.run_and_write.call_args.kwargs, {"overwrite": True})

    def test_output_dir_from_environment(self):
        """Test that the environment variable sets the output directory."""
        with patch.dict(os.environ, {OUTPUT_DIR_ENV: "/tmp/zeno-env"}):
            self._run(["simulate", "--preset", "zeno-qubit"])
        _, output_dir = self.mock_runner.run_and_write.call_args.args
        self.assertEqual(output_dir, "/tmp/zeno-env")

    def test_output_dir_from_config(self):
        """Test the config default when no directory is given."""
        with patch.dict(os.environ, {}, clear=True):
            self._run(["simulate", self.config_path])
        _, output_dir = self.mock_runner.run_and_write.call_args.args
        self.assertEqual(output_dir, "results")

    def test_config_errors(self):
        """Test that every config error is printed and exit code 2 returned."""
        bad_path = os.path.join(self.work_dir, "bad.json")
        with open(bad_path, "w", encoding="utf-8") as f:
            f.write('{"kind": "zeno-qubit", "trials": 3, "colour": "red"}')
        result, _, err = self._run(["simulate", bad_path])
        self.assertEqual(result, EXIT_CONFIG)
        self.assertIn("colour: unknown key", err)
        self.assertIn("seed: required", err)
        self.mock_runner.run_and_write.assert_not_called()

    def test_numerical_errors(self):
        """Test that numerical invariant violations exit with code 3."""
        self.mock_runner.run_and_write.side_effect = DegenerateFitError("nothing leaks")
        result, _, _ = self._run(["simulate", self.config_path])
        self.assertEqual(result, EXIT_NUMERICAL)

    def test_simulation_errors(self):
        """Test that other simulator errors exit with code 2."""
        self.mock_runner.run_and_write.side_effect = ValidationError("bad operator")
        result, _, _ = self._run(["simulate", self.config_path])
        self.assertEqual(result, EXIT_CONFIG)

    def test_io_errors(self):
        """Test that I/O failures exit with code 1."""
        self.mock_runner.run_and_write.side_effect = FileExistsError("exists")
        result, _, _ = self._run(["simulate", self.config_path])
        self.assertEqual(result, EXIT_IO)

        result, _, _ = self._run(["simulate", os.path.join(self.work_dir, "missing.json")])
        self.assertEqual(result, EXIT_IO)

    def test_list_presets(self):
        """Test listing the presets."""
        result, out, _ = self._run(["list-presets"])
        self.assertEqual(result, EXIT_OK)
        self.assertIn("zeno-qubit:", out)
        self.assertIn("attention-sweep:", out)

    def test_validate(self):
        """Test validating a config."""
        result, out, _ = self._run(["validate", self.config_path])
        self.assertEqual(result, EXIT_OK)
        self.assertTrue(out.startswith("OK: zeno-qubit config "))
        self.mock_runner.run_and_write.assert_not_called()


if __name__ == "__main__":
    unittest.main()
