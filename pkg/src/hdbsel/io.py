"""CSV ingestion and byte-stable exports."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .condensed import CondensedTree
from .errors import InputError, ParameterError
from .metrics import PointSet
from .validation import EvalReport

LABEL_COLUMN = "label"


class DataFileError(InputError):
    """A data file is missing, unreadable or malformed."""


def _float_cell(text, row, col, name):
    try:
        value = float(text)
    except ValueError:
        raise DataFileError(f"row {row}, column {col} ({name!r}): non-numeric value {text!r}") from None
    if not math.isfinite(value):
        raise DataFileError(f"row {row}, column {col} ({name!r}): non-finite value {text!r}")
    return value


def read_table(path) -> tuple[list[str], np.ndarray, np.ndarray | None]:
    """Parse a headed CSV into (feature names, feature matrix, label column or None).

    Row numbers in error messages count the header as row 1.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as err:
        raise DataFileError(f"cannot read {path}: {err.strerror}") from None
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DataFileError(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if not body:
        raise DataFileError(f"{path}: no data rows")
    label_idx = header.index(LABEL_COLUMN) if LABEL_COLUMN in header else None
    feature_idx = [i for i in range(len(header)) if i != label_idx]
    if not feature_idx:
        raise DataFileError(f"{path}: no feature columns")

    features = np.empty((len(body), len(feature_idx)))
    labels = np.empty(len(body), dtype=np.intp) if label_idx is not None else None
    for r, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataFileError(f"{path}: row {r} has {len(row)} cells, header has {len(header)}")
        for j, i in enumerate(feature_idx):
            features[r - 2, j] = _float_cell(row[i].strip(), r, i + 1, header[i])
        if label_idx is not None:
            cell = row[label_idx].strip()
            try:
                labels[r - 2] = int(cell)
            except ValueError:
                raise DataFileError(
                    f"row {r}, column {label_idx + 1} ('label'): not an integer {cell!r}") from None
    return [header[i] for i in feature_idx], features, labels


def min_max_scale(x: np.ndarray) -> np.ndarray:
    """Scale each column to [0, 1]; constant columns become 0."""
    x = np.asarray(x, dtype=np.float64)
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (x - lo) / safe, 0.0)


def ingest_csv(path, metric="euclidean", scale=False, degrees=False):
    """Load a point set and optional truth labels from ``path``.

    Returns
    -------
    (PointSet, ndarray or None)
    """
    _, x, truth = read_table(path)
    return prepare_points(x, metric, scale, degrees), truth


def prepare_points(x, metric="euclidean", scale=False, degrees=False) -> PointSet:
    """Apply the degree conversion and scaling options and build a PointSet."""
    if scale and metric == "haversine":
        raise ParameterError("min-max scaling does not apply to latitude/longitude input")
    if metric == "haversine" and degrees:
        x = np.radians(x)
    if scale:
        x = min_max_scale(x)
    return PointSet(x, metric)


def write_points_csv(path, points, labels, header=None):
    """Coordinates plus a ``label`` column, one row per point."""
    points = np.asarray(points)
    header = header or (["x", "y"] if points.shape[1] == 2 else [f"x{i}" for i in range(points.shape[1])])
    try:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([*header, LABEL_COLUMN])
            for row, lab in zip(points.tolist(), np.asarray(labels).tolist()):
                w.writerow([*(repr(v) for v in row), int(lab)])
    except OSError as err:
        raise DataFileError(f"cannot write {path}: {err.strerror}") from None


def export_labels(labels, path) -> None:
    try:
        with Path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["index", LABEL_COLUMN])
            for i, lab in enumerate(np.asarray(labels).tolist()):
                w.writerow([i, int(lab)])
    except OSError as err:
        raise DataFileError(f"cannot write {path}: {err.strerror}") from None


def _json_float(v: float):
    return "inf" if v == math.inf else float(v)


def tree_to_json(ct: CondensedTree) -> str:
    records = [
        {"parent": r["parent"], "child": r["child"], "lambda_val": _json_float(r["lambda_val"]),
         "child_size": r["child_size"]}
        for r in ct.records()
    ]
    return json.dumps(records, indent=1) + "\n"


def tree_from_json(text: str, n_points: int) -> CondensedTree:
    records = json.loads(text)
    rows = [(r["parent"], r["child"], math.inf if r["lambda_val"] == "inf" else r["lambda_val"],
             r["child_size"]) for r in records]
    return CondensedTree.from_records(rows, n_points)


def _write_text(path, text):
    try:
        Path(path).write_text(text)
    except OSError as err:
        raise DataFileError(f"cannot write {path}: {err.strerror}") from None


def export_tree(ct: CondensedTree, path) -> None:
    _write_text(path, tree_to_json(ct))


def export_report(report: EvalReport, path) -> None:
    _write_text(path, json.dumps(report.to_dict(), indent=2) + "\n")
