"""Run statistics for experiments.

This module tracks what an experiment run did and how long it took. Wall time
is reported in summaries only, never in result tables.
"""

import logging
from datetime import datetime, timedelta
from typing import List, Optional

logger = logging.getLogger(__name__)


class RunStats:
    """Tracks statistics during an experiment run.

    Attributes:
        experiment (str): Name of the experiment being run
        start_time (datetime): Time when the run started
        end_time (datetime): Time when the run finished
        steps_simulated (int): Deterministic question steps simulated
        trials_run (int): Sampled trials or episodes run
        rows_written (int): Result rows handed to the writers
        files_written (list): Paths of the output files
    """

    def __init__(self):
        """Initialize run stats."""
        self.experiment = None
        self.start_time = None
        self.end_time = None
        self.steps_simulated = 0
        self.trials_run = 0
        self.rows_written = 0
        self.files_written: List[str] = []

    def reset_stats(self) -> None:
        """Reset all statistics to initial values."""
        self.__init__()  # pylint: disable=unnecessary-dunder-call

    def start_run(self, experiment: str) -> None:
        """Record the experiment name and start time.

        Args:
            experiment (str): Name of the experiment

        Raises:
            ValueError: If the name is empty
        """
        if not experiment:
            raise ValueError("Experiment name must not be empty")
        self.experiment = experiment
        self.start_time = datetime.now()

    def finish_run(self) -> None:
        """Record end time."""
        self.end_time = datetime.now()

    def track_steps(self, count: int) -> None:
        """Track simulated question steps.

        Raises:
            ValueError: If count is negative
        """
        if count < 0:
            raise ValueError("Step count cannot be negative")
        self.steps_simulated += count

    def track_trials(self, count: int) -> None:
        """Track sampled trials.

        Raises:
            ValueError: If count is negative
        """
        if count < 0:
            raise ValueError("Trial count cannot be negative")
        self.trials_run += count

    def track_rows(self, count: int) -> None:
        """Track result rows written."""
        if count < 0:
            raise ValueError("Row count cannot be negative")
        self.rows_written += count

    def track_file_written(self, path: str) -> None:
        """Track an output file."""
        logger.info("Wrote %s", path)
        self.files_written.append(path)

    @property
    def run_time(self) -> Optional[timedelta]:
        """Total run time, or None if the run has not finished."""
        if not self.start_time or not self.end_time:
            return None
        return self.end_time - self.start_time

    @property
    def wall_time_seconds(self) -> Optional[float]:
        """Run time in seconds, or None if the run has not finished."""
        if self.run_time is None:
            return None
        return self.run_time.total_seconds()

    def get_summary_text(self) -> str:
        """Get a formatted text summary of the run.

        Returns:
            Formatted string with run statistics
        """
        if self.run_time is None:
            return "Run not completed"

        seconds = self.wall_time_seconds or 0.0
        files = "".join(f"    {path}\n" for path in self.files_written)
        return (
            f"\nRun Summary:\n"
            f"  Experiment: {self.experiment}\n"
            f"  Time: {seconds:.3f} s\n"
            f"\nSimulation Statistics:\n"
            f"  Steps Simulated: {self.steps_simulated}\n"
            f"  Trials Run: {self.trials_run}\n"
            f"  Rows Written: {self.rows_written}\n"
            f"  Output Files:\n{files}"
        )

    def get_summary(self) -> dict:
        """Get a dictionary summary of the run.

        Returns:
            Dictionary containing run statistics
        """
        return {
            "experiment": self.experiment,
            "steps_simulated": self.steps_simulated,
            "trials_run": self.trials_run,
            "rows_written": self.rows_written,
            "files_written": list(self.files_written),
            "wall_time_seconds": self.wall_time_seconds,
        }
