from typing import List, Sequence, Union

from experiment_runner import ExperimentRunner
from models.component_types import OutputWriters
from output_writer import OutputWriter
from run_stats import RunStats
from writers.csv_writer import CsvWriter
from writers.json_summary_writer import JsonSummaryWriter


class ExperimentRunnerFactory:
    """Factory class for creating experiment runners with default configuration.

    Writers are created from an explicit enum mapping rather than looked up
    dynamically.
    """

    def create(
        self,
        *,
        output_writers: Union[OutputWriters, Sequence[OutputWriter]] = OutputWriters.DEFAULT,
    ) -> ExperimentRunner:
        """Creates an ExperimentRunner with specified configuration.

        Args:
            output_writers: List of writer instances or an OutputWriters enum.
                Defaults to OutputWriters.DEFAULT, which writes the CSV table
                and the JSON summary.

        Raises:
            ValueError: If the writer type is unknown.
        """
        writers: List[OutputWriter] = []

        if isinstance(output_writers, (list, tuple)):
            writers.extend(output_writers)
        elif output_writers == OutputWriters.DEFAULT:
            writers.extend([CsvWriter(), JsonSummaryWriter()])
        elif output_writers == OutputWriters.CSV:
            writers.append(CsvWriter())
        elif output_writers == OutputWriters.JSON_SUMMARY:
            writers.append(JsonSummaryWriter())
        else:
            raise ValueError(f"Unknown writer type: {output_writers}")

        return ExperimentRunner(output_writers=writers, stats=RunStats())
