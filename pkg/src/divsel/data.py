"""Discrete dataset model: canonical integer-coded columns, CSV and sparse
multi-label loaders, binning of continuous columns, and the synthesized
benchmark generator.

Columns are stored column-major as immutable int32 code arrays so a dataset
can be handed to forked worker processes without copying payloads.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError

BINNING_STRATEGIES = ("equal_frequency", "equal_width", "none")


@dataclass(frozen=True)
class BinningSpec:
    """How a numeric column with many distinct values is discretized.

    Columns with at most ``max_raw_categories`` distinct values are kept
    categorical (codes assigned by sorted raw value) regardless of strategy.
    """

    strategy: str = "equal_frequency"
    bins: int = 5
    max_raw_categories: int = 32

    def __post_init__(self):
        if self.strategy not in BINNING_STRATEGIES:
            raise ValueError(f"unknown binning strategy {self.strategy!r}")
        if self.strategy != "none" and self.bins < 2:
            raise ValueError("bins must be >= 2")
        if self.max_raw_categories < 1:
            raise ValueError("max_raw_categories must be >= 1")


DEFAULT_BINNING = BinningSpec()


@dataclass(frozen=True)
class DiscreteColumn:
    """A single variable as dense integer codes 0..cardinality-1.

    Every code below ``cardinality`` occurs at least once; empty columns
    (length 0) have cardinality 0.
    """

    codes: np.ndarray
    cardinality: int

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.int32)
        if codes.ndim != 1:
            raise ValueError("codes must be one-dimensional")
        if codes.size == 0:
            if self.cardinality != 0:
                raise ValueError("empty column must have cardinality 0")
        else:
            counts = np.bincount(codes, minlength=self.cardinality)
            if codes.min() < 0 or codes.max() >= self.cardinality:
                raise ValueError("codes out of range for cardinality")
            if np.any(counts == 0):
                raise ValueError("codes must cover 0..cardinality-1")
        codes.flags.writeable = False
        object.__setattr__(self, "codes", codes)

    @property
    def n(self) -> int:
        return self.codes.size

    @classmethod
    def from_values(cls, values, binning: BinningSpec = DEFAULT_BINNING) -> "DiscreteColumn":
        """Canonicalize raw numeric values into a column.

        Values with at most ``binning.max_raw_categories`` distinct entries
        map to codes by sorted raw value; wider columns are discretized per
        the strategy and then densified (quantile ties can merge bins).
        """
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if values.size == 0:
            return cls(np.empty(0, dtype=np.int32), 0)
        if not np.all(np.isfinite(values)):
            raise ValidationError("column contains non-finite values")
        distinct = np.unique(values)
        if binning.strategy == "none" or distinct.size <= binning.max_raw_categories:
            codes = np.searchsorted(distinct, values)
            return cls(codes, distinct.size)
        if binning.strategy == "equal_frequency":
            s = np.sort(values)
            n = s.size
            cuts = np.unique(s[[n * j // binning.bins for j in range(1, binning.bins)]])
            raw = np.searchsorted(cuts, values, side="right")
        else:
            lo, hi = values.min(), values.max()
            edges = lo + (hi - lo) * np.arange(1, binning.bins) / binning.bins
            raw = np.digitize(values, edges)
        uniq, codes = np.unique(raw, return_inverse=True)
        return cls(codes, uniq.size)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Feature and label columns over a common set of instances.

    Label columns are binary (cardinality <= 2) unless
    ``allow_multiclass_labels`` is set. Names are unique within each group.
    """

    features: tuple
    feature_names: tuple
    labels: tuple
    label_names: tuple
    n_instances: int
    allow_multiclass_labels: bool = False

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "label_names", tuple(self.label_names))
        if not self.features:
            raise ValidationError("dataset needs at least one feature")
        if not self.labels:
            raise ValidationError("dataset needs at least one label")
        if len(self.features) != len(self.feature_names):
            raise ValidationError("feature name count mismatch")
        if len(self.labels) != len(self.label_names):
            raise ValidationError("label name count mismatch")
        for group in (self.feature_names, self.label_names):
            if len(set(group)) != len(group):
                raise ValidationError("column names must be unique")
            if any(not isinstance(s, str) or not s for s in group):
                raise ValidationError("column names must be non-empty strings")
        for col in self.features + self.labels:
            if col.n != self.n_instances:
                raise ValidationError("column length differs from n_instances")
        if not self.allow_multiclass_labels:
            for name, col in zip(self.label_names, self.labels):
                if col.cardinality > 2:
                    raise ValidationError(f"label {name!r} has more than 2 values")

    @property
    def n_features(self) -> int:
        return len(self.features)

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @cached_property
    def feature_matrix(self) -> np.ndarray:
        m = np.vstack([c.codes for c in self.features])
        m.flags.writeable = False
        return m

    @cached_property
    def feature_cards(self) -> np.ndarray:
        return np.array([c.cardinality for c in self.features], dtype=np.int64)

    @cached_property
    def label_matrix(self) -> np.ndarray:
        m = np.vstack([c.codes for c in self.labels])
        m.flags.writeable = False
        return m

    @cached_property
    def label_cards(self) -> np.ndarray:
        return np.array([c.cardinality for c in self.labels], dtype=np.int64)


def _open_text(source):
    if isinstance(source, (str, Path)):
        return str(source), open(source, "r", encoding="utf-8", newline=None), True
    return "<stream>", source, False


def load_dense_csv(
    source,
    label_count: int,
    *,
    has_header: bool = True,
    binning: BinningSpec = DEFAULT_BINNING,
    allow_multiclass_labels: bool = False,
) -> Dataset:
    """Load a comma-separated numeric table whose last ``label_count``
    columns are labels.

    No quoting or escaping; a missing or non-numeric cell is a parse error
    naming the line. Feature columns are discretized per ``binning``.
    """
    if label_count < 1:
        raise ValueError("label_count must be >= 1")
    name, fh, owned = _open_text(source)
    try:
        lines = fh.read().split("\n")
    finally:
        if owned:
            fh.close()
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    if not lines:
        raise ParseError(f"{name}: file is empty")
    width = len(lines[0].split(","))
    header = None
    start = 0
    if has_header:
        header = [c.strip() for c in lines[0].split(",")]
        start = 1
    if width <= label_count:
        raise ValidationError(f"{name}: no feature columns remain with label_count={label_count}")
    rows = []
    for idx in range(start, len(lines)):
        cells = lines[idx].split(",")
        if len(cells) != width:
            raise ParseError(f"{name}: line {idx + 1}: expected {width} cells, got {len(cells)}")
        try:
            row = [float(c) for c in cells]
        except ValueError:
            bad = next(c for c in cells if not _is_number(c))
            raise ParseError(f"{name}: line {idx + 1}: non-numeric cell {bad!r}") from None
        if not all(np.isfinite(row)):
            raise ParseError(f"{name}: line {idx + 1}: non-finite value")
        rows.append(row)
    if not rows:
        raise ValidationError(f"{name}: no data rows")
    table = np.asarray(rows, dtype=np.float64)
    d = width - label_count
    if header is not None:
        feature_names, label_names = header[:d], header[d:]
    else:
        feature_names = [f"f{i}" for i in range(d)]
        label_names = [f"y{j}" for j in range(label_count)]
    features = tuple(DiscreteColumn.from_values(table[:, i], binning) for i in range(d))
    none_binning = BinningSpec(strategy="none")
    labels = tuple(DiscreteColumn.from_values(table[:, d + j], none_binning) for j in range(label_count))
    return Dataset(
        features,
        tuple(feature_names),
        labels,
        tuple(label_names),
        table.shape[0],
        allow_multiclass_labels=allow_multiclass_labels,
    )


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_sparse_multilabel(
    source,
    n_features: int,
    n_labels: int,
    *,
    binning: BinningSpec = DEFAULT_BINNING,
) -> Dataset:
    """Load the sparse multi-label format.

    Each line is ``<comma-separated 0-based label ids> <idx>:<value> ...``
    with 1-based, strictly increasing feature indices and non-negative
    values; the label field may be empty. Absent features take value 0, so
    they canonicalize to code 0.
    """
    if n_features < 1 or n_labels < 1:
        raise ValueError("n_features and n_labels must be >= 1")
    name, fh, owned = _open_text(source)
    try:
        lines = fh.read().split("\n")
    finally:
        if owned:
            fh.close()
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]
    n = len(lines)
    values = np.zeros((n_features, n), dtype=np.float64)
    label_hot = np.zeros((n_labels, n), dtype=np.int32)
    for row, line in enumerate(lines):
        parts = line.split(" ")
        label_field = parts[0]
        if label_field:
            for tok in label_field.split(","):
                try:
                    lab = int(tok)
                except ValueError:
                    raise ParseError(f"{name}: line {row + 1}: bad label id {tok!r}") from None
                if not 0 <= lab < n_labels:
                    raise ParseError(f"{name}: line {row + 1}: label id {lab} out of range")
                label_hot[lab, row] = 1
        prev = 0
        for tok in parts[1:]:
            if not tok:
                continue
            idx_s, _, val_s = tok.partition(":")
            try:
                idx = int(idx_s)
                val = float(val_s)
            except ValueError:
                raise ParseError(f"{name}: line {row + 1}: bad entry {tok!r}") from None
            if not 1 <= idx <= n_features:
                raise ParseError(f"{name}: line {row + 1}: feature index {idx} out of range")
            if idx <= prev:
                raise ParseError(f"{name}: line {row + 1}: feature indices must increase")
            if not np.isfinite(val) or val < 0:
                raise ParseError(f"{name}: line {row + 1}: value must be finite and >= 0")
            values[idx - 1, row] = val
            prev = idx
    features = tuple(DiscreteColumn.from_values(values[i], binning) for i in range(n_features))
    none_binning = BinningSpec(strategy="none")
    labels = tuple(DiscreteColumn.from_values(label_hot[j], none_binning) for j in range(n_labels))
    return Dataset(
        features,
        tuple(f"f{i}" for i in range(n_features)),
        labels,
        tuple(f"y{j}" for j in range(n_labels)),
        n,
    )


def write_dense_csv(data: Dataset, dest) -> None:
    """Write integer codes as dense CSV (header row, labels last). Reloading
    with ``binning='none'`` reproduces the codes exactly."""
    close = False
    if isinstance(dest, (str, Path)):
        fh = open(dest, "w", encoding="utf-8", newline="")
        close = True
    else:
        fh = dest
    try:
        fh.write(",".join(data.feature_names + data.label_names) + "\n")
        cols = [c.codes for c in data.features] + [c.codes for c in data.labels]
        for i in range(data.n_instances):
            fh.write(",".join(str(int(c[i])) for c in cols) + "\n")
    finally:
        if close:
            fh.close()


def generate_synthesized(seed: int = 0) -> Dataset:
    """Build the seeded 800x256 benchmark with 8 binary labels.

    Per label: one source feature agreeing with the label on exactly 128
    instances and one agreeing on exactly 64, each repeated verbatim 50
    times (8 x 2 x 50 = 800 columns).
    """
    rng = np.random.default_rng(seed)
    n = 256
    label_cols = []
    feature_cols = []
    feature_names = []
    for lab in range(8):
        y = rng.integers(0, 2, n).astype(np.int64)
        label_cols.append(y)
        for tag, disagree in (("a", 128), ("b", 192)):
            col = y.copy()
            flip = rng.choice(n, size=disagree, replace=False)
            col[flip] ^= 1
            for rep in range(50):
                feature_cols.append(col)
                feature_names.append(f"x{lab}{tag}{rep:02d}")
    features = tuple(DiscreteColumn.from_values(c) for c in feature_cols)
    labels = tuple(DiscreteColumn.from_values(y) for y in label_cols)
    return Dataset(
        features,
        tuple(feature_names),
        labels,
        tuple(f"y{j}" for j in range(8)),
        n,
    )


def dataset_from_matrices(feature_rows, label_rows, *, feature_names=None, label_names=None) -> Dataset:
    """Build a dataset from integer matrices (columns as rows). Convenience
    for tests and synthetic instances; rows are canonicalized."""
    feature_rows = np.atleast_2d(np.asarray(feature_rows))
    label_rows = np.atleast_2d(np.asarray(label_rows))
    d, n = feature_rows.shape
    t = label_rows.shape[0]
    if label_rows.shape[1] != n:
        raise ValidationError("feature and label instance counts differ")
    features = tuple(DiscreteColumn.from_values(feature_rows[i]) for i in range(d))
    labels = tuple(DiscreteColumn.from_values(label_rows[j]) for j in range(t))
    fnames = tuple(feature_names) if feature_names else tuple(f"f{i}" for i in range(d))
    lnames = tuple(label_names) if label_names else tuple(f"y{j}" for j in range(t))
    return Dataset(features, fnames, labels, lnames, n)
