"""Output writer interface.

This module defines the interface for writing experiment results. Writers
implementing this interface store a ResultTable in one file format each.
"""

from abc import ABC, abstractmethod

from models.result_table import ResultTable


class OutputWriter(ABC):
    """Interface for writing result tables to output.

    Attributes:
        suffix: File suffix the writer produces, including the dot.
    """

    suffix = ""

    @abstractmethod
    def configure(self, output_path: str):
        """Configure the writer with an output path.

        Args:
            output_path: Path to the output file.

        Raises:
            ValueError: If the output directory does not exist.
            PermissionError: If the output directory is not writable.
        """

    @abstractmethod
    def write_table(self, table: ResultTable):
        """Write a result table to the configured path.

        Raises:
            ValueError: If the writer is not configured.
            OSError: If writing fails; the message names the path.
        """
