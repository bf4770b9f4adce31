"""Reading of sweep-table and overlay CSV files.

Sweep tables carry their provenance as leading ``# key: value`` comment
lines followed by a header row; every data column except ``flags`` is
numeric.  Overlay files are plain two-column CSVs with a
``frequency_hz,characteristic_strain`` header.
"""

import csv
import io
from dataclasses import dataclass, field


class FigureError(Exception):
    """Raised when a figure cannot be built from its inputs."""


@dataclass(frozen=True)
class SweepCsv:
    path: str
    metadata: dict
    columns: tuple
    rows: tuple                       # tuples of floats / flag strings
    numeric: dict = field(default_factory=dict)

    def column(self, name):
        if name not in self.columns:
            raise FigureError(
                f"{self.path}: required column {name!r} not present; "
                f"available columns: {', '.join(self.columns)}")
        return self.numeric[name]


def read_sweep_csv(path):
    metadata = {}
    body = []
    with open(path, newline="") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                text = stripped.lstrip("#").strip()
                if ":" in text:
                    key, _, value = text.partition(":")
                    metadata[key.strip()] = value.strip()
                continue
            body.append(line)
    if not body:
        raise FigureError(f"{path}: no data rows")
    reader = csv.reader(io.StringIO("".join(body)))
    columns = tuple(next(reader))
    rows = []
    for record in reader:
        if len(record) != len(columns):
            raise FigureError(
                f"{path}: row has {len(record)} fields, header has "
                f"{len(columns)}")
        rows.append(tuple(record))
    numeric = {}
    for idx, name in enumerate(columns):
        if name == "flags":
            numeric[name] = tuple(row[idx] for row in rows)
            continue
        try:
            numeric[name] = tuple(float(row[idx]) for row in rows)
        except ValueError as exc:
            raise FigureError(
                f"{path}: column {name!r} is not numeric: {exc}") from exc
    return SweepCsv(path=str(path), metadata=metadata, columns=columns,
                    rows=tuple(rows), numeric=numeric)


def read_overlay_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        if [h.strip() for h in header] != ["frequency_hz",
                                           "characteristic_strain"]:
            raise FigureError(
                f"{path}: overlay header must be "
                "'frequency_hz,characteristic_strain'")
        points = [(float(f), float(s)) for f, s in reader]
    return points
