"""The selection objective: scaled label relevance plus pairwise diversity.

Relevance of a set S is, per label, the sum of the top_p largest normalized
MI values among S's features; diversity is the sum of pairwise distances
over unordered pairs. Both terms carry non-negative scale factors, so the
unweighted objective (both scales 1) and the lambda-weighted one are the
same machinery. Relevance is non-negative, monotone, and submodular;
scaled distances stay a pseudometric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .info import InfoCache


@dataclass(frozen=True, eq=False)
class ObjectiveConfig:
    """Weights and shared tables for one selection problem.

    ``mi_table`` has one row per feature (global id) and one column per
    label. ``diversity_weight`` echoes the lambda used to build a weighted
    config; it is None for a plain unweighted one.
    """

    mi_table: np.ndarray
    k: int
    top_p: int
    relevance_scale: float
    diversity_scale: float
    diversity_weight: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.top_p < 1:
            raise ValueError("top_p must be >= 1")
        if self.relevance_scale < 0 or self.diversity_scale < 0:
            raise ValueError("scales must be non-negative")
        if self.relevance_scale == 0 and self.diversity_scale == 0 and self.k > 1:
            raise ValueError("scales must not both be zero")
        table = np.asarray(self.mi_table, dtype=np.float64)
        if table.ndim != 2 or table.shape[1] < 1:
            raise ValueError("mi_table must be (n_features, n_labels)")
        object.__setattr__(self, "mi_table", table)

    @property
    def n_labels(self) -> int:
        return self.mi_table.shape[1]

    @classmethod
    def weighted(cls, mi_table, k: int, lam: float, top_p: int = 10) -> "ObjectiveConfig":
        """Balanced objective: relevance scaled by
        (1 - lam) * k(k-1) / (2 * top_p * n_labels), diversity by lam.

        At k=1 both scales can be 0 (the pair normalization vanishes); the
        selection then degenerates to the highest-relevance single feature.
        """
        if not 0.0 <= lam <= 1.0:
            raise ValueError("lambda must be in [0, 1]")
        mi_table = np.asarray(mi_table, dtype=np.float64)
        n_labels = mi_table.shape[1]
        rel = (1.0 - lam) * (k * (k - 1)) / (2.0 * top_p * n_labels)
        return cls(mi_table, k, top_p, rel, lam, diversity_weight=lam)

    @classmethod
    def plain(cls, mi_table, k: int, top_p: int = 10) -> "ObjectiveConfig":
        """Unweighted objective: relevance plus diversity, both at scale 1."""
        return cls(mi_table, k, top_p, 1.0, 1.0)


class TopPTracker:
    """Per-label running top-``p`` MI values of the selected features.

    Keeps only a (n_labels, p) buffer. ``tau`` is the p-th largest inserted
    value per label, or 0 while fewer than p features are selected, which
    makes max(0, mi - tau) the exact relevance gain of a candidate.
    """

    def __init__(self, n_labels: int, top_p: int):
        self.top_p = top_p
        self.n_labels = n_labels
        self._top = np.zeros((n_labels, top_p), dtype=np.float64)
        self._count = 0

    @property
    def count(self) -> int:
        return self._count

    def tau(self) -> np.ndarray:
        if self._count < self.top_p:
            return np.zeros(self.n_labels, dtype=np.float64)
        return self._top.min(axis=1)

    def insert(self, mi_row: np.ndarray) -> None:
        rows = np.arange(self.n_labels)
        if self._count < self.top_p:
            self._top[rows, self._count] = mi_row
        else:
            slot = self._top.argmin(axis=1)
            current = self._top[rows, slot]
            better = mi_row > current
            self._top[rows[better], slot[better]] = mi_row[better]
        self._count += 1


def marginal_g_rows(mi_rows: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Relevance gain of each candidate row given per-label thresholds."""
    gains = np.maximum(mi_rows - tau[None, :], 0.0)
    total = np.zeros(gains.shape[0], dtype=np.float64)
    for j in range(gains.shape[1]):
        total = total + gains[:, j]
    return total


def marginal_g(feature_id: int, cfg: ObjectiveConfig, tracker: TopPTracker) -> float:
    """g(S + {x}) - g(S) for the tracker's current selection (unscaled)."""
    row = cfg.mi_table[int(feature_id)][None, :]
    return float(marginal_g_rows(row, tracker.tau())[0])


def relevance_g(selected, cfg: ObjectiveConfig) -> float:
    """Sum over labels of the top_p largest MI values among ``selected``.

    Zero on the empty set; with fewer than top_p features every value
    counts.
    """
    ids = np.asarray(sorted(int(i) for i in selected), dtype=np.int64)
    if ids.size == 0:
        return 0.0
    sub = cfg.mi_table[ids]
    take = min(cfg.top_p, ids.size)
    top = np.sort(sub, axis=0)[ids.size - take :]
    return float(np.sum(top.sum(axis=0)))


def diversity(selected, cache: InfoCache) -> float:
    """Sum of pairwise distances over unordered pairs of ``selected``."""
    ids = sorted(int(i) for i in selected)
    total = 0.0
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            total += cache.distance(ids[a], ids[b])
    return total


def h_value(selected, cfg: ObjectiveConfig, cache: InfoCache) -> float:
    """relevance_scale * g(S) + diversity_scale * D(S)."""
    return cfg.relevance_scale * relevance_g(selected, cfg) + cfg.diversity_scale * diversity(
        selected, cache
    )


@dataclass
class SelectionState:
    """Incremental companion of a greedy run.

    ``dist_sum`` holds, for every candidate position, the running sum of
    raw distances to the selected set; ``objective_value`` tracks the
    scaled objective of the selected set.
    """

    cfg: ObjectiveConfig
    cache: InfoCache
    order: np.ndarray
    alive: np.ndarray
    dist_sum: np.ndarray
    tracker: TopPTracker
    selected: list = field(default_factory=list)
    objective_value: float = 0.0

    @classmethod
    def start(cls, candidates, cfg: ObjectiveConfig, cache: InfoCache) -> "SelectionState":
        order = np.asarray(sorted(int(i) for i in candidates), dtype=np.int64)
        if order.size == 0:
            raise ValueError("no candidates")
        if np.unique(order).size != order.size:
            raise ValueError("duplicate candidate ids")
        return cls(
            cfg=cfg,
            cache=cache,
            order=order,
            alive=np.ones(order.size, dtype=bool),
            dist_sum=np.zeros(order.size, dtype=np.float64),
            tracker=TopPTracker(cfg.n_labels, cfg.top_p),
        )

    def remaining_ids(self) -> np.ndarray:
        return self.order[self.alive]

    def add(self, feature_id: int) -> None:
        """Select ``feature_id``: update the objective, thresholds, and the
        running distance sums of the other candidates."""
        pos = int(np.searchsorted(self.order, feature_id))
        if pos >= self.order.size or self.order[pos] != feature_id or not self.alive[pos]:
            raise ValueError(f"feature {feature_id} is not an available candidate")
        gain = (
            self.cfg.relevance_scale * marginal_g(feature_id, self.cfg, self.tracker)
            + self.cfg.diversity_scale * self.dist_sum[pos]
        )
        self.objective_value += gain
        self.tracker.insert(self.cfg.mi_table[feature_id])
        self.alive[pos] = False
        self.selected.append(int(feature_id))
        rest = self.alive.nonzero()[0]
        if rest.size:
            self.dist_sum[rest] += self.cache.distance_block(feature_id, self.order[rest])
