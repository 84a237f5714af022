import csv
import numbers
from typing import IO, Any, Dict, List, Optional, Sequence

import numpy as np


def format_value(value: Any, digits: int = 6) -> str:
    """Formats a table cell.

    Floats are written with `digits` significant digits, booleans as 0/1 and
    missing values as empty cells.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return f"{float(value):.{digits}g}"
    return str(value)


class TableLogger:
    """Stages table rows and writes them as CSV or an aligned text table."""

    def __init__(
        self,
        file: IO[str],
        fieldnames: Optional[Sequence[str]] = None,
        fmt: str = "csv",
        digits: int = 6,
    ):
        """Creates the logger.

        Args:
            file: Output text stream.
            fieldnames: Column order. Inferred from the first row if None.
            fmt: "csv" or "pretty".
            digits: Significant digits for floats.
        """
        if fmt not in ("csv", "pretty"):
            raise ValueError(f"Unknown table format {fmt}")
        self._file = file
        self._fieldnames: Optional[List[str]] = (
            None if fieldnames is None else list(fieldnames)
        )
        self._fmt = fmt
        self._digits = digits

        self._staged: Dict[str, Any] = {}
        self._rows: List[Dict[str, str]] = []
        self._csv_writer: Optional[csv.DictWriter] = None

    @property
    def fieldnames(self) -> Optional[List[str]]:
        """Column names."""
        return self._fieldnames

    def log(self, key: str, value: Any) -> None:
        """Stages a (key, value) pair for the current row.

        Dict values are flattened into `key_subkey` columns.

        Args:
            key: Column name.
            value: Single value or dict of values.
        """
        if isinstance(value, dict):
            for subkey, subval in value.items():
                self.log(f"{key}_{subkey}", subval)
            return

        self._staged[key] = value

    def flush(self) -> None:
        """Closes the current row.

        CSV rows are written immediately; pretty rows are buffered until
        `close()` so that columns can be aligned.
        """
        if self._fieldnames is None:
            self._fieldnames = list(self._staged.keys())

        missing = set(self._staged) - set(self._fieldnames)
        if missing:
            raise KeyError(f"Columns {sorted(missing)} not in table header")

        row = {
            key: format_value(self._staged.get(key), self._digits)
            for key in self._fieldnames
        }
        self._staged = {}

        if self._fmt == "pretty":
            self._rows.append(row)
            return

        if self._csv_writer is None:
            self._csv_writer = csv.DictWriter(
                self._file, fieldnames=self._fieldnames, lineterminator="\n"
            )
            self._csv_writer.writeheader()
        self._csv_writer.writerow(row)

    def close(self) -> None:
        """Writes buffered output."""
        if self._staged:
            self.flush()

        if self._fmt == "csv":
            if self._csv_writer is None and self._fieldnames is not None:
                # Header only.
                csv.writer(self._file, lineterminator="\n").writerow(self._fieldnames)
            self._file.flush()
            return

        if self._fieldnames is None:
            return
        widths = [
            max([len(name)] + [len(row[name]) for row in self._rows])
            for name in self._fieldnames
        ]
        lines = ["  ".join(n.rjust(w) for n, w in zip(self._fieldnames, widths))]
        for row in self._rows:
            lines.append(
                "  ".join(row[n].rjust(w) for n, w in zip(self._fieldnames, widths))
            )
        self._file.write("\n".join(lines) + "\n")
        self._file.flush()
