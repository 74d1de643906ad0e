"""JSON summary writer implementation.

The summary carries what a reader needs to trust a CSV: the digest of the
config that produced it, the key scalars, the seed and run metadata.
Timings are left out, so a repeated run writes the same bytes.
"""

import json
import logging

from models.result_table import ResultTable
from writers.base_writer import FileWriter

logger = logging.getLogger(__name__)

VOLATILE_METADATA = ("wall_time_seconds",)


class JsonSummaryWriter(FileWriter):
    """Writes the scalars and metadata of a result table as JSON."""

    suffix = ".summary.json"

    def write_table(self, table: ResultTable):
        """Write the summary document.

        Raises:
            ValueError: If the writer is not configured.
            OSError: If the file cannot be written.
        """
        path = self._require_path()
        summary = {
            "config_digest": table.metadata.get("config_digest"),
            "seed": table.metadata.get("seed"),
            "scalars": table.scalars,
            "columns": list(table.columns),
            "row_count": len(table.rows),
            "metadata": {
                key: value for key, value in table.metadata.items()
                if key not in VOLATILE_METADATA
            },
        }
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(summary, f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            logger.error("Failed to write summary %s: %s", path, e)
            raise OSError(f"Failed to write {path}: {e}") from e
