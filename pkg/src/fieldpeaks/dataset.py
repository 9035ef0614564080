"""Point-cloud ingestion and the dense pairwise distance matrix."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist, squareform

FORMATS = ("csv", "whitespace")
METRICS = ("euclidean",)


class DatasetError(ValueError):
    """Raised when an input file cannot be turned into a valid Dataset."""

    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable collection of ``n`` points in ``R^d``.

    Row ``i`` of ``points`` is always input row ``i``.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DatasetError(f"expected a non-empty (n, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            bad = int(np.argwhere(~np.isfinite(pts))[0, 0])
            raise DatasetError("non-finite coordinate", row=bad + 1)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def scaled(self, c: float) -> "Dataset":
        return Dataset(self.points * c)

    def permuted(self, order) -> "Dataset":
        return Dataset(self.points[np.asarray(order)])


def _split_rows(text: str, fmt: str):
    if fmt == "csv":
        for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
            yield lineno, [cell.strip() for cell in row]
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            yield lineno, line.split()


def load_dataset(path, format: str = "csv", has_header: bool = False) -> Dataset:
    """Read one point per row from a delimiter-separated numeric file.

    Blank lines are ignored. When ``has_header`` is set the first
    non-blank line is skipped. Errors carry the 1-based line number.
    """
    if format not in FORMATS:
        raise DatasetError(f"unknown format {format!r}; expected one of {FORMATS}")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc

    rows = []
    width = None
    header_pending = has_header
    for lineno, cells in _split_rows(text, format):
        if not cells or all(c == "" for c in cells):
            continue
        if header_pending:
            header_pending = False
            continue
        values = []
        for cell in cells:
            try:
                v = float(cell)
            except ValueError:
                raise DatasetError(f"non-numeric cell {cell!r}", row=lineno) from None
            if not math.isfinite(v):
                raise DatasetError(f"non-finite cell {cell!r}", row=lineno)
            values.append(v)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DatasetError(
                f"ragged row: expected {width} columns, found {len(values)}", row=lineno
            )
        rows.append(values)

    if not rows:
        raise DatasetError(f"{path} contains no data rows")
    return Dataset(np.array(rows, dtype=float))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric dense ``n x n`` distance matrix with cached extremes.

    ``d_min_pos`` is ``None`` when every pair of points coincides
    (including the single-point case).
    """

    dist: np.ndarray
    d_max: float
    d_min_pos: Optional[float]

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_matrix(cls, dist) -> "DistanceMatrix":
        dist = np.array(dist, dtype=float)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.all(np.isfinite(dist)) or np.any(dist < 0):
            raise ValueError("distances must be finite and nonnegative")
        if np.any(np.diag(dist) != 0) or not np.array_equal(dist, dist.T):
            raise ValueError("distance matrix must be symmetric with zero diagonal")
        upper = dist[np.triu_indices(dist.shape[0], k=1)]
        d_max = float(upper.max()) if upper.size else 0.0
        positive = upper[upper > 0]
        d_min_pos = float(positive.min()) if positive.size else None
        dist.setflags(write=False)
        return cls(dist, d_max, d_min_pos)


def pairwise_distances(ds: Dataset, metric: str = "euclidean") -> DistanceMatrix:
    if metric not in METRICS:
        raise ValueError(f"unsupported metric {metric!r}; expected one of {METRICS}")
    if ds.n == 1:
        return DistanceMatrix.from_matrix(np.zeros((1, 1)))
    # squareform mirrors the condensed vector, so symmetry and the zero diagonal are exact
    return DistanceMatrix.from_matrix(squareform(pdist(ds.points, metric=metric)))
