"""Multi-label metric suite: hand-worked 2x2 case, trivial cases, the
empty-set conventions, and CSV parsing."""

import io

import numpy as np
import pytest

from divsel.errors import ParseError, ValidationError
from divsel.metrics import PredictionMatrix, multilabel_metrics

# truth rows {a},{a,b}; pred rows {a,b},{b}
TRUTH_2X2 = [[1, 0], [1, 1]]
PRED_2X2 = [[1, 1], [0, 1]]


def test_hand_worked_example():
    m = multilabel_metrics(TRUTH_2X2, PRED_2X2)
    assert m["subset_accuracy"] == 0.0
    assert m["example_accuracy"] == 0.5
    assert m["example_f"] == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert m["label_avg_f"] == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert m["pooled_f"] == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_perfect_prediction():
    rng = np.random.default_rng(90)
    t = rng.integers(0, 2, size=(20, 6))
    m = multilabel_metrics(t, t)
    assert all(v == 1.0 for v in m.values())


def test_complement_prediction():
    rng = np.random.default_rng(91)
    t = rng.integers(0, 2, size=(20, 6))
    m = multilabel_metrics(t, 1 - t)
    assert m["subset_accuracy"] == 0.0
    assert m["example_accuracy"] == 0.0
    assert m["example_f"] == 0.0
    assert m["label_avg_f"] == 0.0
    assert m["pooled_f"] == 0.0


def test_empty_set_conventions():
    z = np.zeros((4, 3), dtype=int)
    m = multilabel_metrics(z, z)
    assert all(v == 1.0 for v in m.values())
    # one empty row among non-empty ones still scores 1 for that row
    t = [[0, 0], [1, 0]]
    p = [[0, 0], [1, 0]]
    m = multilabel_metrics(t, p)
    assert m["example_accuracy"] == 1.0
    assert m["example_f"] == 1.0
    # label b absent from truth and pred contributes 1 to the average
    assert m["label_avg_f"] == 1.0


def test_label_avg_and_pooled_diverge():
    t = [[1, 1], [1, 0]]
    p = [[1, 0], [1, 0]]
    m = multilabel_metrics(t, p)
    # label a: 2*2/4 = 1, label b: 0/1 = 0; pooled: 2*2/(4+1)
    assert m["label_avg_f"] == pytest.approx(0.5, abs=1e-15)
    assert m["pooled_f"] == pytest.approx(0.8, abs=1e-15)


def test_metrics_range_random():
    rng = np.random.default_rng(92)
    for _ in range(25):
        t = rng.integers(0, 2, size=(8, 5))
        p = rng.integers(0, 2, size=(8, 5))
        m = multilabel_metrics(t, p)
        for v in m.values():
            assert 0.0 <= v <= 1.0
        # Dice >= Jaccard pointwise, so the means order the same way
        assert m["example_f"] >= m["example_accuracy"] - 1e-15
        assert m["subset_accuracy"] <= m["example_accuracy"] + 1e-15


def test_matrix_validation():
    with pytest.raises(ValidationError, match="two-dimensional"):
        PredictionMatrix([0, 1, 0])
    with pytest.raises(ValidationError, match="0 or 1"):
        PredictionMatrix([[0, 2]])
    with pytest.raises(ValidationError, match="non-empty"):
        PredictionMatrix(np.zeros((0, 3)))
    with pytest.raises(ValidationError, match="shape mismatch"):
        multilabel_metrics([[0, 1]], [[0, 1, 0]])


def test_matrix_is_read_only():
    pm = PredictionMatrix([[0, 1]])
    with pytest.raises(ValueError):
        pm.values[0, 0] = 1


def test_from_csv_round_trip():
    pm = PredictionMatrix.from_csv(io.StringIO("1,0\r\n1,1\n"))
    assert pm.shape == (2, 2)
    assert pm.values.tolist() == TRUTH_2X2


def test_from_csv_errors_name_line():
    with pytest.raises(ParseError, match="line 2: expected 2 cells"):
        PredictionMatrix.from_csv(io.StringIO("1,0\n1\n"))
    with pytest.raises(ParseError, match="line 1: cell '2'"):
        PredictionMatrix.from_csv(io.StringIO("2,0\n"))
    with pytest.raises(ParseError, match="empty"):
        PredictionMatrix.from_csv(io.StringIO(""))
