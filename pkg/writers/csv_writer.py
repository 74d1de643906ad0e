"""CSV writer implementation.

Values are rendered with repr, the shortest decimal that reads back as the
same double, so re-parsing the file reproduces every value bitwise.
"""

import csv
import logging

from models.result_table import ResultTable
from writers.base_writer import FileWriter

logger = logging.getLogger(__name__)


def render_value(value: float) -> str:
    """Shortest round-trip decimal rendering of a float."""
    return repr(float(value))


class CsvWriter(FileWriter):
    """Writes a result table as CSV with a header row."""

    suffix = ".csv"

    def write_table(self, table: ResultTable):
        """Write the header and every row.

        Raises:
            ValueError: If the writer is not configured.
            OSError: If the file cannot be written.
        """
        path = self._require_path()
        try:
            with open(path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(table.columns)
                for row in table.rows:
                    writer.writerow([render_value(value) for value in row])
        except OSError as e:
            logger.error("Failed to write CSV %s: %s", path, e)
            raise OSError(f"Failed to write {path}: {e}") from e
        logger.debug("Wrote %d rows to %s", len(table.rows), path)
