"""Greedy selection engines over the scaled relevance-plus-diversity
objective.

Both variants seed with the highest-relevance single feature, then
repeatedly add the candidate maximizing (weight * scaled relevance gain +
scaled distance sum to the selected set). The plain engine uses weight 1;
the half-relevance engine ("altgreedy") uses weight 1/2, which carries a
1/2-approximation guarantee for the objective under a metric distance.

Ties: scores within 1e-12 of the maximum count as equal and the smallest
feature id wins, so the output is a deterministic function of the candidate
set and removing a never-selected candidate does not change the result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .info import InfoCache
from .objective import ObjectiveConfig, SelectionState, marginal_g, marginal_g_rows

TIE_BAND = 1e-12


class GreedyVariant(enum.Enum):
    GREEDY = "greedy"
    ALTGREEDY = "altgreedy"

    @property
    def relevance_weight(self) -> float:
        return 1.0 if self is GreedyVariant.GREEDY else 0.5


def _band_argmax(ids: np.ndarray, scores: np.ndarray) -> int:
    """Smallest id whose score is within TIE_BAND of the maximum.

    ids must be ascending. The winner depends only on the score values, not
    on candidate enumeration order.
    """
    best = scores.max()
    idx = int(np.nonzero(scores >= best - TIE_BAND)[0][0])
    return int(ids[idx])


def select_first(candidates, cfg: ObjectiveConfig) -> int:
    """The candidate with the largest total MI over labels (ties: smallest id)."""
    state = SelectionState.start(candidates, cfg, cache=None)
    return _first_pick(state)


def _first_pick(state: SelectionState) -> int:
    ids = state.remaining_ids()
    zeros = np.zeros(state.cfg.n_labels, dtype=np.float64)
    scores = marginal_g_rows(state.cfg.mi_table[ids], zeros)
    return _band_argmax(ids, scores)


def greedy_state(candidates, k: int, variant: GreedyVariant, cfg: ObjectiveConfig, cache: InfoCache) -> SelectionState:
    """Run a greedy selection and return its final state."""
    if k < 1:
        raise ValueError("k must be >= 1")
    state = SelectionState.start(candidates, cfg, cache)
    limit = min(k, state.order.size)
    state.add(_first_pick(state))
    w = variant.relevance_weight
    while len(state.selected) < limit:
        alive_pos = state.alive.nonzero()[0]
        ids = state.order[alive_pos]
        rel = marginal_g_rows(cfg.mi_table[ids], state.tracker.tau())
        scores = w * (cfg.relevance_scale * rel) + cfg.diversity_scale * state.dist_sum[alive_pos]
        state.add(_band_argmax(ids, scores))
    return state


def greedy_select(candidates, k: int, variant: GreedyVariant, cfg: ObjectiveConfig, cache: InfoCache) -> list:
    """Ordered ids of min(k, |candidates|) greedily selected features."""
    return list(greedy_state(candidates, k, variant, cfg, cache).selected)


@dataclass(frozen=True)
class NicenessReport:
    """Worst-case rejection ratios of one greedy run.

    For k >= 10 the plain greedy guarantees max_gain_ratio <= 5 (objective
    gain of re-adding any rejected candidate, relative to f(S)/k) and
    max_distance_ratio <= 4.5 (its scaled distance sum relative to
    f(S)/(k-1)); removal_stable reports whether dropping any single
    rejected candidate reproduces the same selection.
    """

    selected: tuple
    f_value: float
    rejected_count: int
    max_gain_ratio: float
    max_distance_ratio: float
    removal_stable: bool


def niceness_witness(
    candidates,
    k: int,
    cfg: ObjectiveConfig,
    cache: InfoCache,
    variant: GreedyVariant = GreedyVariant.GREEDY,
    check_stability: bool = True,
) -> NicenessReport:
    """Measure the rejection bounds on one instance.

    Requires k >= 10 (the bounds hold from there) and more candidates than
    k so at least one candidate is rejected.
    """
    if k < 10:
        raise ValueError("k must be >= 10")
    ids = sorted(int(i) for i in candidates)
    if len(ids) <= k:
        raise ValueError("need more candidates than k")
    state = greedy_state(ids, k, variant, cfg, cache)
    selected = state.selected
    chosen = set(selected)
    f_val = state.objective_value
    max_gain = 0.0
    max_dist = 0.0
    stable = True
    for t in ids:
        if t in chosen:
            continue
        dist_sum = 0.0
        for x in selected:
            dist_sum += cache.distance(t, x)
        gain = (
            cfg.relevance_scale * marginal_g(t, cfg, state.tracker)
            + cfg.diversity_scale * dist_sum
        )
        weighted_dist = cfg.diversity_scale * dist_sum
        if f_val > 0.0:
            max_gain = max(max_gain, gain * k / f_val)
            max_dist = max(max_dist, weighted_dist * (k - 1) / f_val)
        elif gain > 0.0 or weighted_dist > 0.0:
            max_gain = float("inf")
            max_dist = float("inf")
        if check_stability:
            rerun = greedy_state([i for i in ids if i != t], k, variant, cfg, cache)
            if rerun.selected != selected:
                stable = False
    return NicenessReport(
        selected=tuple(selected),
        f_value=f_val,
        rejected_count=len(ids) - len(selected),
        max_gain_ratio=max_gain,
        max_distance_ratio=max_dist,
        removal_stable=stable,
    )
