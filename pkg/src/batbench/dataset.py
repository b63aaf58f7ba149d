"""Loading, summarizing, scaling, and splitting the baseball training table.

The expected CSV schema is sixteen per-semester / career counting features
plus the ``score`` target. Column order in the file is free; in memory the
features always sit in canonical order.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSplitError,
    DimensionMismatchError,
    EmptyDataError,
    EmptyIndexSetError,
    ParseError,
    SchemaError,
    UnknownColumnError,
)

FEATURE_NAMES: tuple[str, ...] = (
    "AtBat", "Hits", "HmRun", "Runs", "RBI", "Walks", "years",
    "CAtBat", "CHits", "CHmRun", "CRuns", "CRBI", "CWalks",
    "PutOuts", "Assists", "Errors",
)
TARGET_NAME = "score"
ALL_COLUMNS: tuple[str, ...] = FEATURE_NAMES + (TARGET_NAME,)

PERCENTILE_POINTS: tuple[int, ...] = (1, 5, 10, 25, 50, 75, 90, 95, 99)

# cell tokens treated as a missing value rather than a parse failure
_MISSING_TOKENS = {"", "na", "nan", "n/a", "null"}


@dataclass(frozen=True)
class Dataset:
    """Immutable cleaned table: n x 16 features plus the score target."""

    feature_names: tuple[str, ...]
    features: np.ndarray
    target: np.ndarray
    n_rows: int
    n_dropped: int

    def __post_init__(self):
        feats = np.array(self.features, dtype=np.float64)
        targ = np.array(self.target, dtype=np.float64)
        if len(targ) != feats.shape[0] or feats.shape[0] != self.n_rows:
            raise ValueError("feature/target row counts disagree with n_rows")
        feats.setflags(write=False)
        targ.setflags(write=False)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "target", targ)

    def column(self, name: str) -> np.ndarray:
        """Return one column (feature or target) as a 1-D view."""
        if name == TARGET_NAME:
            return self.target
        if name in self.feature_names:
            return self.features[:, self.feature_names.index(name)]
        raise UnknownColumnError(f"unknown column {name!r}")


@dataclass(frozen=True)
class ColumnSummary:
    count: int
    mean: float
    std: float
    min: float
    max: float
    percentiles: dict[int, float]


@dataclass(frozen=True)
class Scaler:
    """Per-column z-score parameters; zero-variance columns store std 1.0."""

    mean: np.ndarray
    std: np.ndarray
    fitted_on: frozenset[int]

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.float64)
        std = np.array(self.std, dtype=np.float64)
        mean.setflags(write=False)
        std.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", std)


@dataclass(frozen=True)
class SplitPlan:
    train_indices: tuple[int, ...]
    validation_indices: tuple[int, ...]
    seed: int
    ratio: float


def _parse_cell(raw: str, line_no: int, column: str) -> float | None:
    """Parse one cell; None means missing. Non-numeric junk is a ParseError."""
    text = raw.strip()
    if text.lower() in _MISSING_TOKENS:
        return None
    try:
        value = float(text)
    except ValueError:
        raise ParseError(
            f"non-numeric cell at row {line_no}, column {column!r}: {raw!r}"
        ) from None
    if not math.isfinite(value):
        return None
    return value


def load_csv(path) -> Dataset:
    """Load a Table-schema CSV into a Dataset.

    Rows missing the score or any feature value are dropped and counted in
    ``n_dropped``. Header names are matched exactly (case-sensitive) but may
    appear in any order in the file.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDataError(f"{path}: file is empty") from None
        header = [h.strip() for h in header]

        missing = [c for c in ALL_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"missing required column(s): {', '.join(missing)}")
        unknown = [c for c in header if c not in ALL_COLUMNS]
        if unknown:
            raise SchemaError(f"unexpected column(s): {', '.join(unknown)}")
        if len(header) != len(set(header)):
            dupes = sorted({c for c in header if header.count(c) > 1})
            raise SchemaError(f"duplicate column(s): {', '.join(dupes)}")

        positions = [header.index(c) for c in ALL_COLUMNS]

        kept: list[list[float]] = []
        n_dropped = 0
        n_raw = 0
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            n_raw += 1
            if len(row) != len(header):
                raise ParseError(
                    f"row {line_no}: expected {len(header)} fields, got {len(row)}"
                )
            values = [_parse_cell(row[pos], line_no, ALL_COLUMNS[i])
                      for i, pos in enumerate(positions)]
            if any(v is None for v in values):
                n_dropped += 1
                continue
            kept.append(values)

    if not kept:
        raise EmptyDataError(f"{path}: no data rows")

    table = np.array(kept, dtype=np.float64)
    dataset = Dataset(
        feature_names=FEATURE_NAMES,
        features=np.ascontiguousarray(table[:, :-1]),
        target=np.ascontiguousarray(table[:, -1]),
        n_rows=len(kept),
        n_dropped=n_dropped,
    )
    assert dataset.n_rows + dataset.n_dropped == n_raw
    return dataset


def _interpolated_percentile(sorted_values: np.ndarray, p: float) -> float:
    """Linear interpolation between closest order statistics at rank p*(n-1)."""
    n = len(sorted_values)
    if n == 1:
        return float(sorted_values[0])
    rank = (p / 100.0) * (n - 1)
    lo = math.floor(rank)
    hi = math.ceil(rank)
    frac = rank - lo
    return float(sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]))


def summarize_column(values: np.ndarray) -> ColumnSummary:
    """ColumnSummary of a 1-D vector (sample std, interpolated percentiles)."""
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    if n == 0:
        raise EmptyDataError("cannot summarize an empty column")
    ordered = np.sort(values)
    std = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return ColumnSummary(
        count=n,
        mean=float(np.mean(values)),
        std=std,
        min=float(ordered[0]),
        max=float(ordered[-1]),
        percentiles={p: _interpolated_percentile(ordered, p) for p in PERCENTILE_POINTS},
    )


def describe(dataset: Dataset, column: str) -> ColumnSummary:
    """Descriptive statistics for one column (feature or target)."""
    return summarize_column(dataset.column(column))


def fit_scaler_matrix(matrix: np.ndarray, rows) -> Scaler:
    """Fit per-column mean/std over exactly the given rows of a raw matrix."""
    rows = list(rows)
    if not rows:
        raise EmptyIndexSetError("scaler needs at least one row")
    n = matrix.shape[0]
    bad = [r for r in rows if not 0 <= r < n]
    if bad:
        raise IndexError(f"row indices out of range: {bad[:5]}")
    sub = np.asarray(matrix, dtype=np.float64)[rows]
    mean = sub.mean(axis=0)
    if len(rows) > 1:
        std = sub.std(axis=0, ddof=1)
    else:
        std = np.zeros(sub.shape[1])
    std = np.where(std > 0.0, std, 1.0)
    return Scaler(mean=mean, std=std, fitted_on=frozenset(rows))


def fit_scaler(dataset: Dataset, rows) -> Scaler:
    """Fit a feature scaler on the given dataset rows only."""
    return fit_scaler_matrix(dataset.features, rows)


def apply_scaler(scaler: Scaler, matrix) -> np.ndarray:
    """Z-score a matrix with stored statistics; the input is left untouched."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(scaler.mean):
        got = matrix.shape[1] if matrix.ndim == 2 else matrix.ndim
        raise DimensionMismatchError(
            f"expected {len(scaler.mean)} columns, got {got}"
        )
    return (matrix - scaler.mean) / scaler.std


def split(n: int, ratio: float, seed: int) -> SplitPlan:
    """Seeded shuffle of 0..n-1; the first ceil(ratio*n) rows become train."""
    if not 0.0 < ratio < 1.0:
        raise DegenerateSplitError(f"ratio must be in (0, 1), got {ratio}")
    target = ratio * n
    nearest = round(target)
    # snap away float noise so real-number semantics hold (0.8 * 10 -> 8)
    n_train = int(nearest) if abs(target - nearest) < 1e-9 else math.ceil(target)
    if n_train < 1 or n_train >= n:
        raise DegenerateSplitError(
            f"split of {n} rows at ratio {ratio} leaves an empty side"
        )
    perm = np.random.default_rng(seed).permutation(n)
    return SplitPlan(
        train_indices=tuple(perm[:n_train].tolist()),
        validation_indices=tuple(perm[n_train:].tolist()),
        seed=seed,
        ratio=ratio,
    )
