"""CSV dataset ingestion and the bundled Iris data.

Loading is strict: every selected cell must parse as a finite real, and
failures name the file line and column so spreadsheet-sized inputs can be
fixed without guesswork.  Values are written back with 17 significant
digits, so a save/load round trip is bit-exact.
"""

import csv
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import DatasetError, DatasetParseError, EmptyDatasetError
from .residuals import Sample

__all__ = ["DatasetFile", "load_csv", "save_csv", "iris_path", "load_iris"]


@dataclass(frozen=True)
class DatasetFile:
    """A CSV file plus the choices needed to read it as a numeric matrix.

    ``columns`` may hold header names or 0-based indices (as ints or digit
    strings); None selects every column.
    """

    path: str
    has_header: bool = True
    columns: tuple | None = None


def _resolve_columns(spec: DatasetFile, header: list[str], width: int) -> list[int]:
    if spec.columns is None:
        return list(range(width))
    indices = []
    for token in spec.columns:
        if isinstance(token, int):
            idx = token
        else:
            token = str(token).strip()
            if spec.has_header and token in header:
                idx = header.index(token)
            elif token.lstrip("-").isdigit():
                idx = int(token)
            else:
                known = ", ".join(header) if header else "(no header)"
                raise DatasetError(
                    f"unknown column {token!r}; available: {known}"
                )
        if not 0 <= idx < width:
            raise DatasetError(
                f"column index {idx} out of range for {width} columns"
            )
        indices.append(idx)
    if not indices:
        raise DatasetError("empty column selection")
    return indices


def load_csv(spec: DatasetFile | str) -> Sample:
    """Read a CSV file into a Sample, preserving row order.

    Raises OSError for unreadable files, :class:`EmptyDatasetError` when no
    data rows remain, and :class:`DatasetParseError` naming the file line
    and column for any cell that is not a finite real.
    """
    if not isinstance(spec, DatasetFile):
        spec = DatasetFile(path=spec)
    with open(spec.path, newline="") as handle:
        reader = csv.reader(handle)
        rows = [row for row in reader if row and any(c.strip() for c in row)]
    header: list[str] = []
    if spec.has_header and rows:
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise EmptyDatasetError(f"{spec.path}: no data rows")
    width = len(rows[0])
    indices = _resolve_columns(spec, header, width)
    out = np.empty((len(rows), len(indices)))
    offset = 2 if spec.has_header else 1
    for r, row in enumerate(rows):
        if len(row) != width:
            raise DatasetParseError(
                f"{spec.path}: line {r + offset} has {len(row)} cells, "
                f"expected {width}"
            )
        for c, idx in enumerate(indices):
            cell = row[idx].strip()
            try:
                value = float(cell)
            except ValueError:
                value = float("nan")
            if not np.isfinite(value):
                name = header[idx] if header else str(idx)
                raise DatasetParseError(
                    f"{spec.path}: line {r + offset}, column {name!r}: "
                    f"{cell!r} is not a finite number"
                )
            out[r, c] = value
    return Sample(out)


def save_csv(sample: Sample, path: str, columns: list[str] | None = None) -> None:
    """Write a Sample as CSV with full-precision (round-trippable) floats."""
    if columns is not None and len(columns) != sample.dim:
        raise DatasetError(
            f"got {len(columns)} column names for {sample.dim} columns"
        )
    if columns is None:
        columns = [f"x{c}" for c in range(sample.dim)]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in sample.rows:
            writer.writerow([format(float(v), ".17g") for v in row])


_IRIS_COLUMNS = ("sepal_length", "sepal_width", "petal_length", "petal_width")


def iris_path() -> str:
    """Filesystem path of the bundled Iris CSV (150 flowers, 4 measurements)."""
    return str(resources.files("stiefel_mvn").joinpath("data/iris.csv"))


def load_iris() -> Sample:
    """The four Iris measurement columns as a 150 x 4 Sample."""
    return load_csv(DatasetFile(path=iris_path(), columns=_IRIS_COLUMNS))
