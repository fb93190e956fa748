"""Deterministic instance builders shared by the test suites.

Instances plant some label-correlated features and some duplicate columns
so that both objective terms have signal; everything derives from the seed.
"""

from __future__ import annotations

import numpy as np

from divsel.data import Dataset, dataset_from_matrices
from divsel.info import InfoCache
from divsel.objective import ObjectiveConfig


def random_instance(seed: int, d: int, n: int, t: int, card_hi: int = 4) -> Dataset:
    """Random dataset with planted structure.

    Roughly a third of the features are noisy label copies, a sixth are
    verbatim duplicates of an earlier feature, the rest are uniform draws
    over a random cardinality <= card_hi.
    """
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, size=(t, n))
    feats = np.empty((d, n), dtype=np.int64)
    for i in range(d):
        kind = rng.random()
        if kind < 1 / 3:
            col = labels[rng.integers(0, t)].copy()
            flips = rng.choice(n, size=max(1, n // 4), replace=False)
            col[flips] = 1 - col[flips]
            feats[i] = col
        elif kind < 1 / 2 and i > 0:
            feats[i] = feats[rng.integers(0, i)]
        else:
            feats[i] = rng.integers(0, rng.integers(2, card_hi + 1), size=n)
    return dataset_from_matrices(feats, labels)


def instance_with_cache(seed: int, d: int, n: int, t: int, card_hi: int = 4):
    data = random_instance(seed, d, n, t, card_hi)
    return data, InfoCache(data)


def plain_cfg(cache: InfoCache, k: int, p: int = 10) -> ObjectiveConfig:
    return ObjectiveConfig.plain(cache.mi_table(), k, p)


def weighted_cfg(cache: InfoCache, k: int, lam: float, p: int = 10) -> ObjectiveConfig:
    return ObjectiveConfig.weighted(cache.mi_table(), k, lam, p)
