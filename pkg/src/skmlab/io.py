"""File formats and deterministic serialization.

Numbers are written with 17 significant digits so every double round-trips
exactly; outputs contain no timestamps or environment state, which makes
repeated runs byte-identical.

Formats:
  * dataset CSV — header row of feature names, one observation per row;
  * dissimilarity tensor CSV — columns (i, i_prime, j, value) with 1-based
    indices; only i < i_prime rows are required (symmetry and the zero
    diagonal are implied), and bounds are validated on read.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from skmlab.core import Dataset, DissimilarityTensor


class ConfigError(ValueError):
    """Bad or missing configuration (CLI exit code 2)."""


class DataError(ValueError):
    """Bad or missing data file (CLI exit code 3)."""


class CheckFailure(RuntimeError):
    """A verification subcommand found a violated property (exit code 4)."""


def fmt(x) -> str:
    """Render a number with 17 significant digits (exact double round-trip)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("refusing to serialize a non-finite number")
    return format(x, ".17g")


def _json_token(value, indent: int) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (bool, np.bool_, int, np.integer, float, np.floating)):
        return fmt(value)
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(pad + "  " + _json_token(v, indent + 1) for v in value)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            pad + "  " + json.dumps(str(k)) + ": " + _json_token(v, indent + 1) for k, v in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def dumps_json(obj) -> str:
    """Deterministic pretty JSON with 17-significant-digit numbers."""
    return _json_token(obj, 0) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps_json(obj))


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ConfigError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON in {path}: {e}") from e


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else fmt(cell) for cell in row])


# ---------------------------------------------------------------------------
# dataset CSV


def write_dataset_csv(path, data: Dataset) -> None:
    header = [f"f{j + 1}" for j in range(data.p)]
    write_csv(path, header, data.values)


def read_dataset_csv(path, bound_M: float | None = None) -> Dataset:
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"empty dataset file: {path}") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError as e:
                raise DataError(f"{path}:{lineno}: non-numeric cell") from e
            if len(rows[-1]) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} columns")
    if not rows:
        raise DataError(f"dataset has no observations: {path}")
    try:
        return Dataset(values=np.asarray(rows), bound_M=bound_M)
    except ValueError as e:
        raise DataError(str(e)) from e


# ---------------------------------------------------------------------------
# dissimilarity tensor CSV


def write_tensor_csv(path, D: DissimilarityTensor) -> None:
    rows = []
    for i in range(D.n):
        for i2 in range(i + 1, D.n):
            for j in range(D.p):
                rows.append((i + 1, i2 + 1, j + 1, D.d[i, i2, j]))
    write_csv(path, ["i", "i_prime", "j", "value"], rows)


def read_tensor_csv(path, bound_M: float | None = None) -> DissimilarityTensor:
    path = Path(path)
    if not path.exists():
        raise DataError(f"tensor file not found: {path}")
    entries: dict[tuple[int, int, int], float] = {}
    n_max = 0
    p_max = 0
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"empty tensor file: {path}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise DataError(f"{path}:{lineno}: expected 4 columns (i, i_prime, j, value)")
            try:
                i, i2, j = int(row[0]), int(row[1]), int(row[2])
                value = float(row[3])
            except ValueError as e:
                raise DataError(f"{path}:{lineno}: bad cell") from e
            if min(i, i2, j) < 1:
                raise DataError(f"{path}:{lineno}: indices are 1-based")
            if i == i2:
                if value != 0.0:
                    raise DataError(f"{path}:{lineno}: diagonal entries must be zero")
                continue
            key = (min(i, i2) - 1, max(i, i2) - 1, j - 1)
            if key in entries and entries[key] != value:
                raise DataError(f"{path}:{lineno}: conflicting duplicate entry for {key}")
            entries[key] = value
            n_max = max(n_max, i, i2)
            p_max = max(p_max, j)
    if not entries:
        raise DataError(f"tensor has no off-diagonal entries: {path}")
    d = np.zeros((n_max, n_max, p_max))
    for (i, i2, j), value in entries.items():
        d[i, i2, j] = value
        d[i2, i, j] = value
    if bound_M is None:
        bound_M = float(d.max(initial=0.0))
    try:
        return DissimilarityTensor(d=d, bound_M=bound_M)
    except ValueError as e:
        raise DataError(str(e)) from e
