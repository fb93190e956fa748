"""Entropy, mutual information, and the normalized variation-of-information
distance over discrete columns, plus a memoizing cache.

All quantities reduce per-cell terms of a contingency table with the counts
sorted ascending and an explicit sequential accumulation over cells. Sorting
makes transposed tables sum identically, so d(a, b) == d(b, a) bit-for-bit;
sequential accumulation keeps a value independent of how many pairs are
batched together and of zero-cell padding, so cached, batched, and one-off
computations of the same pair agree exactly.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, DiscreteColumn


def _as_codes(col) -> tuple[np.ndarray, int]:
    if isinstance(col, DiscreteColumn):
        return col.codes.astype(np.int64, copy=False), col.cardinality
    arr = np.asarray(col)
    if arr.ndim != 1:
        raise ValueError("column must be one-dimensional")
    if arr.size == 0:
        raise ValueError("column must have at least one value")
    if not np.issubdtype(arr.dtype, np.integer) and not np.issubdtype(arr.dtype, np.bool_):
        raise ValueError("raw columns must hold integer codes")
    uniq, codes = np.unique(arr, return_inverse=True)
    return codes.astype(np.int64, copy=False), int(uniq.size)


def _entropy_rows(counts: np.ndarray, n: int, log_fn) -> np.ndarray:
    """Entropy per row of a count matrix. Zero cells contribute nothing."""
    counts = np.sort(counts, axis=1)
    p = counts / float(n)
    terms = -(p * log_fn(np.where(counts > 0, p, 1.0)))
    total = np.zeros(terms.shape[0], dtype=np.float64)
    for j in range(terms.shape[1]):
        total = total + terms[:, j]
    return total


def _count_rows(mat: np.ndarray, width: int) -> np.ndarray:
    """Per-row value counts for a (rows, n) code matrix, all codes < width."""
    rows = mat.shape[0]
    flat = mat.astype(np.int64, copy=False) + (np.arange(rows, dtype=np.int64) * width)[:, None]
    return np.bincount(flat.ravel(), minlength=rows * width).reshape(rows, width)


def _pair_count_rows(t_codes: np.ndarray, t_card: int, mat: np.ndarray, width: int) -> np.ndarray:
    """Joint counts of a target column against every row of ``mat``.

    ``width`` must be at least t_card times the largest row cardinality;
    extra cells stay zero and do not affect the entropy reduction.
    """
    joint = mat.astype(np.int64, copy=False) * np.int64(t_card) + t_codes[None, :]
    return _count_rows(joint, width)


def entropy_rows(mat: np.ndarray, cards: np.ndarray, *, log_fn=np.log2) -> np.ndarray:
    """Entropy of each row of a code matrix."""
    n = mat.shape[1]
    if n == 0:
        raise ValueError("columns must have at least one value")
    width = int(np.max(cards))
    return _entropy_rows(_count_rows(mat, width), n, log_fn)


def joint_entropy_rows(
    t_codes: np.ndarray, t_card: int, mat: np.ndarray, cards: np.ndarray, *, log_fn=np.log2
) -> np.ndarray:
    """Joint entropy of a target column with each row of a code matrix."""
    n = t_codes.size
    if mat.shape[1] != n:
        raise ValueError("column lengths differ")
    width = int(t_card) * int(np.max(cards))
    return _entropy_rows(_pair_count_rows(t_codes, t_card, mat, width), n, log_fn)


def nvi_distance_rows(
    t_codes, t_card, h_target, mat, cards, h_rows, *, log_fn=np.log2
) -> np.ndarray:
    """Normalized variation-of-information distance, target vs. each row."""
    h_joint = joint_entropy_rows(t_codes, t_card, mat, cards, log_fn=log_fn)
    mi = np.maximum(0.0, (h_target + h_rows) - h_joint)
    safe = np.where(h_joint > 0.0, h_joint, 1.0)
    dist = np.where(h_joint > 0.0, 1.0 - mi / safe, 0.0)
    return np.clip(dist, 0.0, 1.0)


def normalized_mi_rows(
    t_codes, t_card, h_target, mat, cards, h_rows, *, log_fn=np.log2
) -> np.ndarray:
    """Mutual information scaled by sqrt(H(a) H(b)), target vs. each row."""
    h_joint = joint_entropy_rows(t_codes, t_card, mat, cards, log_fn=log_fn)
    mi = np.maximum(0.0, (h_target + h_rows) - h_joint)
    prod = h_target * h_rows
    denom = np.sqrt(np.where(prod > 0.0, prod, 1.0))
    nmi = np.where(prod > 0.0, mi / denom, 0.0)
    return np.clip(nmi, 0.0, 1.0)


def entropy(col, *, log_fn=np.log2) -> float:
    """Shannon entropy of one column, in bits for the default log."""
    codes, card = _as_codes(col)
    return float(entropy_rows(codes[None, :], np.array([card]), log_fn=log_fn)[0])


def joint_entropy(a, b, *, log_fn=np.log2) -> float:
    """Shannon entropy of the paired column (a, b)."""
    a_codes, a_card = _as_codes(a)
    b_codes, b_card = _as_codes(b)
    return float(
        joint_entropy_rows(a_codes, a_card, b_codes[None, :], np.array([b_card]), log_fn=log_fn)[0]
    )


def mutual_information(a, b, *, log_fn=np.log2) -> float:
    """I(a; b) = H(a) + H(b) - H(a, b), clamped to be non-negative."""
    ha = entropy(a, log_fn=log_fn)
    hb = entropy(b, log_fn=log_fn)
    hab = joint_entropy(a, b, log_fn=log_fn)
    return max(0.0, (ha + hb) - hab)


def nvi_distance(a, b, *, log_fn=np.log2) -> float:
    """1 - I(a; b) / H(a, b): a [0, 1] pseudometric on discrete columns.

    Zero exactly when the columns induce the same partition (duplicates
    included); 0 by convention when H(a, b) = 0.
    """
    a_codes, a_card = _as_codes(a)
    b_codes, b_card = _as_codes(b)
    ha = float(entropy_rows(a_codes[None, :], np.array([a_card]), log_fn=log_fn)[0])
    hb = float(entropy_rows(b_codes[None, :], np.array([b_card]), log_fn=log_fn)[0])
    return float(
        nvi_distance_rows(
            a_codes, a_card, ha, b_codes[None, :], np.array([b_card]), np.array([hb]), log_fn=log_fn
        )[0]
    )


def normalized_mi(a, b, *, log_fn=np.log2) -> float:
    """I(a; b) / sqrt(H(a) H(b)) in [0, 1]; 0 if either entropy is 0."""
    a_codes, a_card = _as_codes(a)
    b_codes, b_card = _as_codes(b)
    ha = float(entropy_rows(a_codes[None, :], np.array([a_card]), log_fn=log_fn)[0])
    hb = float(entropy_rows(b_codes[None, :], np.array([b_card]), log_fn=log_fn)[0])
    return float(
        normalized_mi_rows(
            a_codes, a_card, ha, b_codes[None, :], np.array([b_card]), np.array([hb]), log_fn=log_fn
        )[0]
    )


class ContingencyTable:
    """Joint count matrix for a column pair plus its marginals."""

    def __init__(self, joint: np.ndarray, n: int):
        joint = np.asarray(joint, dtype=np.int64)
        if joint.ndim != 2:
            raise ValueError("joint must be a matrix")
        if int(joint.sum()) != n:
            raise ValueError("joint counts must total n")
        if joint.min() < 0:
            raise ValueError("counts must be non-negative")
        self.joint = joint
        self.n = n
        self.row_marginal = joint.sum(axis=1)
        self.col_marginal = joint.sum(axis=0)

    @classmethod
    def from_columns(cls, a, b) -> "ContingencyTable":
        a_codes, a_card = _as_codes(a)
        b_codes, b_card = _as_codes(b)
        if a_codes.size != b_codes.size:
            raise ValueError("column lengths differ")
        flat = a_codes * b_card + b_codes
        joint = np.bincount(flat, minlength=a_card * b_card).reshape(a_card, b_card)
        return cls(joint, a_codes.size)


class InfoCache:
    """Memoized entropies, pairwise distances, and normalized MI for one
    dataset's columns.

    Column ids: features are 0..d-1; label j is d+j. ``feature_ids``
    restricts the universe that vectorized distance rows cover (a machine's
    partition); scalar lookups accept any id. Lookups are idempotent, so
    duplicated concurrent computation is harmless.
    """

    def __init__(self, data: Dataset, feature_ids=None):
        self._data = data
        if feature_ids is None:
            universe = np.arange(data.n_features, dtype=np.int64)
        else:
            universe = np.unique(np.asarray(feature_ids, dtype=np.int64))
            if universe.size and (universe[0] < 0 or universe[-1] >= data.n_features):
                raise ValueError("feature id out of range")
        self._universe = universe
        self._entropies: dict[int, float] = {}
        self._rows: dict[int, np.ndarray] = {}
        self._pair_d: dict[tuple, float] = {}
        self._pair_nmi: dict[tuple, float] = {}
        self._mi_table = None
        self._umat = None
        self._ucards = None
        self._uH = None

    @property
    def data(self) -> Dataset:
        return self._data

    @property
    def universe(self) -> np.ndarray:
        return self._universe

    def _column(self, cid: int) -> DiscreteColumn:
        d = self._data.n_features
        if 0 <= cid < d:
            return self._data.features[cid]
        if d <= cid < d + self._data.n_labels:
            return self._data.labels[cid - d]
        raise ValueError(f"column id {cid} out of range")

    def entropy(self, cid: int) -> float:
        h = self._entropies.get(cid)
        if h is None:
            col = self._column(cid)
            h = float(
                entropy_rows(
                    col.codes[None, :].astype(np.int64), np.array([col.cardinality])
                )[0]
            )
            self._entropies[cid] = h
        return h

    def _universe_arrays(self):
        if self._umat is None:
            self._umat = self._data.feature_matrix[self._universe]
            self._ucards = self._data.feature_cards[self._universe]
            self._uH = entropy_rows(self._umat, self._ucards)
            for pos, cid in enumerate(self._universe):
                self._entropies.setdefault(int(cid), float(self._uH[pos]))
        return self._umat, self._ucards, self._uH

    def distance_block(self, target_id: int, ids) -> np.ndarray:
        """d(target, u) for each u in ids; ids must lie in the universe."""
        row = self._rows.get(target_id)
        if row is None:
            col = self._column(target_id)
            mat, cards, h_rows = self._universe_arrays()
            row = nvi_distance_rows(
                col.codes.astype(np.int64),
                col.cardinality,
                self.entropy(target_id),
                mat,
                cards,
                h_rows,
            )
            row.flags.writeable = False
            self._rows[target_id] = row
        ids = np.asarray(ids, dtype=np.int64)
        pos = np.searchsorted(self._universe, ids)
        if np.any(pos >= self._universe.size) or np.any(self._universe[pos] != ids):
            raise ValueError("id outside this cache's feature universe")
        return row[pos]

    def distance(self, i: int, j: int) -> float:
        key = (i, j) if i <= j else (j, i)
        val = self._pair_d.get(key)
        if val is not None:
            return val
        row = self._rows.get(i)
        if row is not None and self._in_universe(j):
            val = float(self.distance_block(i, np.array([j]))[0])
        else:
            row = self._rows.get(j)
            if row is not None and self._in_universe(i):
                val = float(self.distance_block(j, np.array([i]))[0])
            else:
                a, b = self._column(i), self._column(j)
                val = float(
                    nvi_distance_rows(
                        a.codes.astype(np.int64),
                        a.cardinality,
                        self.entropy(i),
                        b.codes[None, :].astype(np.int64),
                        np.array([b.cardinality]),
                        np.array([self.entropy(j)]),
                    )[0]
                )
        self._pair_d[key] = val
        return val

    def _in_universe(self, cid: int) -> bool:
        pos = np.searchsorted(self._universe, cid)
        return pos < self._universe.size and self._universe[pos] == cid

    def nmi(self, i: int, j: int) -> float:
        key = (i, j) if i <= j else (j, i)
        val = self._pair_nmi.get(key)
        if val is None:
            a, b = self._column(i), self._column(j)
            val = float(
                normalized_mi_rows(
                    a.codes.astype(np.int64),
                    a.cardinality,
                    self.entropy(i),
                    b.codes[None, :].astype(np.int64),
                    np.array([b.cardinality]),
                    np.array([self.entropy(j)]),
                )[0]
            )
            self._pair_nmi[key] = val
        return val

    def mi_table(self) -> np.ndarray:
        """Normalized MI of every universe feature against every label,
        shape (universe size, n_labels)."""
        if self._mi_table is None:
            d = self._data.n_features
            mat, cards, h_rows = self._universe_arrays()
            cols = []
            for j in range(self._data.n_labels):
                lab = self._data.labels[j]
                cols.append(
                    normalized_mi_rows(
                        lab.codes.astype(np.int64),
                        lab.cardinality,
                        self.entropy(d + j),
                        mat,
                        cards,
                        h_rows,
                    )
                )
            table = np.column_stack(cols)
            table.flags.writeable = False
            self._mi_table = table
        return self._mi_table
