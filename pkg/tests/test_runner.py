"""Partitioning and the centralized / distributed / streaming drivers."""

import json

import numpy as np
import pytest

from divsel.greedy import GreedyVariant, greedy_select
from divsel.info import InfoCache
from divsel.objective import h_value
from divsel.runner import (
    PartitionPlan,
    centralized_select,
    default_machine_count,
    distributed_select,
    random_partition,
    streaming_select,
)
from helpers import instance_with_cache, weighted_cfg


def test_random_partition_determinism_and_range():
    p1 = random_partition(500, 7, seed=3)
    p2 = random_partition(500, 7, seed=3)
    p3 = random_partition(500, 7, seed=4)
    assert np.array_equal(p1.assignment, p2.assignment)
    assert not np.array_equal(p1.assignment, p3.assignment)
    assert p1.assignment.min() >= 0 and p1.assignment.max() < 7
    assert sum(p1.sizes()) == 500


def test_random_partition_single_machine():
    plan = random_partition(20, 1, seed=0)
    assert plan.assignment.tolist() == [0] * 20
    assert plan.machines()[0].tolist() == list(range(20))


def test_partition_machines_disjoint_ascending():
    plan = random_partition(100, 5, seed=9)
    seen = []
    for ids in plan.machines():
        assert list(ids) == sorted(ids)
        seen.extend(ids.tolist())
    assert sorted(seen) == list(range(100))


def test_partition_binomial_concentration():
    # d=100000, m=10: each machine within 10000 +/- 500 nearly always
    hits = 0
    for seed in range(100):
        sizes = random_partition(100000, 10, seed).sizes()
        if all(abs(s - 10000) <= 500 for s in sizes):
            hits += 1
    assert hits >= 99


def test_partition_validation():
    with pytest.raises(ValueError):
        random_partition(10, 0, seed=0)
    with pytest.raises(ValueError):
        random_partition(0, 3, seed=0)
    with pytest.raises(ValueError):
        PartitionPlan(2, 0, np.array([0, 5]))


def test_default_machine_count():
    assert default_machine_count(47236, 10) == 69
    assert default_machine_count(49060, 200) == 16
    assert default_machine_count(64, 64) == 1
    with pytest.raises(ValueError):
        default_machine_count(5, 9)


def test_centralized_report(synth, synth_cache):
    cfg = weighted_cfg(synth_cache, k=10, lam=0.5, p=10)
    rep = centralized_select(synth, 10, cfg, GreedyVariant.ALTGREEDY, synth_cache)
    assert rep.mode == "centralized"
    assert len(rep.selected_ids) == 10
    assert rep.selected_names == tuple(synth.feature_names[i] for i in rep.selected_ids)
    assert rep.objective["h"] == pytest.approx(
        h_value(rep.selected_ids, cfg, synth_cache), abs=1e-9
    )
    assert rep.objective["h"] == rep.objective["relevance_term"] + rep.objective["diversity_term"]
    assert rep.config["algorithm"] == "altgreedy"
    assert rep.plan is None
    assert all(v >= 0 for v in rep.timings_ms.values())
    json.dumps(rep.to_json_dict())  # serializable


def test_distributed_matches_manual_pipeline():
    data, _ = instance_with_cache(seed=50, d=40, n=32, t=2)
    cache = InfoCache(data)
    cfg = weighted_cfg(cache, k=5, lam=0.5, p=3)
    rep = distributed_select(data, 5, cfg, m=3, seed=11)
    plan = random_partition(40, 3, seed=11)
    union = []
    for ids in plan.machines():
        if ids.size:
            union.extend(greedy_select(ids, 5, GreedyVariant.GREEDY, cfg, InfoCache(data, feature_ids=ids)))
    expect = greedy_select(union, 5, GreedyVariant.ALTGREEDY, cfg, InfoCache(data, feature_ids=np.array(union)))
    assert list(rep.selected_ids) == expect
    assert set(rep.selected_ids) <= set(union)  # core-set containment


def test_distributed_m1_degenerate():
    data, cache = instance_with_cache(seed=51, d=25, n=28, t=2)
    cfg = weighted_cfg(cache, k=4, lam=0.5, p=2)
    rep = distributed_select(data, 4, cfg, m=1, seed=0)
    stage1 = greedy_select(range(25), 4, GreedyVariant.GREEDY, cfg, cache)
    stage2 = greedy_select(stage1, 4, GreedyVariant.ALTGREEDY, cfg, cache)
    assert list(rep.selected_ids) == stage2


def test_distributed_default_machine_count_used():
    data, cache = instance_with_cache(seed=52, d=90, n=24, t=2)
    cfg = weighted_cfg(cache, k=10, lam=0.5)
    rep = distributed_select(data, 10, cfg, seed=0)
    assert rep.plan.m == default_machine_count(90, 10)
    assert rep.config["machines"] == rep.plan.m


def test_distributed_rejects_bad_k(synth, synth_cache):
    cfg = weighted_cfg(synth_cache, k=10, lam=0.5)
    with pytest.raises(ValueError):
        distributed_select(synth, 0, cfg, m=4, seed=0)
    with pytest.raises(ValueError):
        distributed_select(synth, 801, cfg, m=4, seed=0)


def test_parallel_pool_matches_serial():
    data, cache = instance_with_cache(seed=53, d=60, n=30, t=2)
    cfg = weighted_cfg(cache, k=6, lam=0.5, p=3)
    serial = distributed_select(data, 6, cfg, m=4, seed=2, parallelism=1)
    pooled = distributed_select(data, 6, cfg, m=4, seed=2, parallelism=3)
    assert serial.selected_ids == pooled.selected_ids
    assert serial.objective == pooled.objective


def test_streaming_equals_distributed_quick():
    for seed in range(5):
        data, cache = instance_with_cache(seed=60 + seed, d=30, n=26, t=2)
        cfg = weighted_cfg(cache, k=4, lam=0.5, p=2)
        dist = distributed_select(data, 4, cfg, m=3, seed=seed)
        stream = streaming_select(data, 4, cfg, m=3, seed=seed)
        assert stream.selected_ids == dist.selected_ids
        assert stream.mode == "streaming"


def test_streaming_peak_bound():
    data, cache = instance_with_cache(seed=66, d=50, n=24, t=2)
    cfg = weighted_cfg(cache, k=5, lam=0.5, p=2)
    rep = streaming_select(data, 5, cfg, m=4, seed=1)
    largest = max(rep.plan.sizes())
    assert rep.peak_retained_feature_columns <= largest + 4 * 5


def test_streaming_single_partition_retains_everything():
    data, cache = instance_with_cache(seed=67, d=35, n=24, t=2)
    cfg = weighted_cfg(cache, k=5, lam=0.5, p=2)
    rep = streaming_select(data, 5, cfg, m=1, seed=0)
    assert rep.peak_retained_feature_columns == 35


def test_run_report_json_round_trip():
    data, cache = instance_with_cache(seed=68, d=20, n=20, t=2)
    cfg = weighted_cfg(cache, k=3, lam=0.5, p=2)
    rep = distributed_select(data, 3, cfg, m=2, seed=5)
    doc = json.loads(json.dumps(rep.to_json_dict(), sort_keys=True))
    assert doc["selected_ids"] == list(rep.selected_ids)
    assert doc["plan"]["m"] == 2
    assert doc["plan"]["seed"] == 5
    assert len(doc["plan"]["assignment"]) == 20
    assert doc["timings_ms"]["total"] >= 0
